// Copyright 2026 The qpcp developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpcp/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace qpcp {

namespace {

constexpr double kPrune = 1e-12;

void check_x(const std::string& x, int n) {
    if (static_cast<int>(x.size()) != n) {
        throw std::invalid_argument("input bitstring length != n");
    }
    for (char c : x) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("input bitstring must be over {0,1}");
        }
    }
}

void check_register_block(const std::vector<int>& reg, int n, int p1, const char* what) {
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (reg[i] < n || reg[i] >= n + p1) {
            throw std::invalid_argument(std::string(what) + ": qubit outside ancilla register");
        }
        if (i > 0 && reg[i] != reg[i - 1] + 1) {
            throw std::invalid_argument(std::string(what) + ": qubits not contiguous ascending");
        }
    }
}

int proof_targets_in(const std::vector<int>& targets, int proof_offset) {
    int count = 0;
    for (int t : targets) {
        if (t >= proof_offset) {
            ++count;
        }
    }
    return count;
}

void check_circuit_proof_locality(const Circuit& c, int num_qubits, int proof_offset,
                                  int allowed, const char* what) {
    for (const auto& g : c) {
        std::visit([&](const auto& gate) { gate.validate(num_qubits); }, g);
        for (const auto& targets : gate_target_sets(g)) {
            if (proof_targets_in(targets, proof_offset) > allowed) {
                throw std::invalid_argument(
                    std::string(what) + ": a gate touches more than " +
                    std::to_string(allowed) + " proof qubits");
            }
        }
    }
}

// Shared branching machinery. The proof is decomposed into pure components;
// measurement outcomes fork the (unnormalized) state vector, whose squared
// norm is the branch probability.
struct WeightedPure {
    double weight;
    Eigen::VectorXcd state;  // on the proof register only
};

std::vector<WeightedPure> pure_components(const DensityMatrix& xi, int proof_qubits) {
    if (xi.num_qubits != proof_qubits) {
        throw std::invalid_argument("proof has wrong qubit count");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix(0.5 * (xi.matrix + xi.matrix.adjoint())));
    std::vector<WeightedPure> comps;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double w = es.eigenvalues()(i);
        if (w > kPrune) {
            comps.push_back({w, es.eigenvectors().col(i)});
        }
    }
    return comps;
}

Eigen::VectorXcd embed_proof(const Eigen::VectorXcd& proof, int total_qubits,
                             int proof_qubits) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << total_qubits);
    psi.head(Eigen::Index{1} << proof_qubits) = proof;
    return psi;
}

void apply_input_gates(Eigen::VectorXcd& psi, int total_qubits, const std::string& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == '1') {
            sim::apply_plain(psi, total_qubits, named_gate("X", {static_cast<int>(i)}));
        }
    }
}

using BranchSink = std::function<void(const std::vector<int>&, bool, double)>;

void adaptive_branches_pure(const AdaptiveVerifier& v, const std::string& x,
                            const Eigen::VectorXcd& proof, double scale,
                            const BranchSink& sink) {
    const int nq = v.total_qubits();
    const int kp2 = v.proof_qubits();
    Eigen::VectorXcd psi0 = embed_proof(proof, nq, kp2);
    apply_input_gates(psi0, nq, x);

    struct Frame {
        Eigen::VectorXcd psi;
        std::vector<int> path;
    };
    std::vector<Frame> frontier;
    frontier.push_back({std::move(psi0), {}});

    for (int t = 0; t < v.q; ++t) {
        std::vector<Frame> next;
        for (auto& f : frontier) {
            sim::apply_circuit(f.psi, nq, v.circuits[t]);
            const auto dist = sim::register_distribution(f.psi, nq, v.index_register);
            for (std::size_t val = 0; val < dist.size(); ++val) {
                if (scale * dist[val] < kPrune) {
                    continue;
                }
                const int idx = static_cast<int>(val);
                const bool duplicate =
                    std::find(f.path.begin(), f.path.end(), idx) != f.path.end();
                if (idx >= kp2 || duplicate) {
                    throw std::runtime_error(
                        "verifier structural violation: index outcome " +
                        std::to_string(idx) + " (" +
                        (duplicate ? "duplicate" : "out of range") +
                        ") has probability " + std::to_string(scale * dist[val]));
                }
                Frame g{f.psi, f.path};
                sim::project_register(g.psi, nq, v.index_register, val);
                g.path.push_back(idx);
                next.push_back(std::move(g));
            }
        }
        frontier = std::move(next);
    }

    for (auto& f : frontier) {
        sim::apply_circuit(f.psi, nq, v.circuits[v.q]);
        const double p1 = sim::bit_probability(f.psi, nq, v.output_qubit, 1);
        const double p0 = sim::bit_probability(f.psi, nq, v.output_qubit, 0);
        if (scale * p1 >= kPrune) {
            sink(f.path, true, scale * p1);
        }
        if (scale * p0 >= kPrune) {
            sink(f.path, false, scale * p0);
        }
    }
}

void nonadaptive_branches_pure(const NonAdaptiveVerifier& v, const std::string& x,
                               const Eigen::VectorXcd& proof, double scale,
                               const BranchSink& sink) {
    const int nq = v.total_qubits();
    const int kp2 = v.proof_qubits();
    Eigen::VectorXcd psi0 = embed_proof(proof, nq, kp2);
    apply_input_gates(psi0, nq, x);
    sim::apply_circuit(psi0, nq, v.prep_circuit);

    struct Frame {
        Eigen::VectorXcd psi;
        std::vector<int> path;
    };
    std::vector<Frame> frontier;
    frontier.push_back({std::move(psi0), {}});

    for (int t = 0; t < v.q; ++t) {
        std::vector<Frame> next;
        for (auto& f : frontier) {
            const auto dist = sim::register_distribution(f.psi, nq, v.index_registers[t]);
            for (std::size_t val = 0; val < dist.size(); ++val) {
                if (scale * dist[val] < kPrune) {
                    continue;
                }
                const int idx = static_cast<int>(val);
                const bool duplicate =
                    std::find(f.path.begin(), f.path.end(), idx) != f.path.end();
                if (idx >= kp2 || duplicate) {
                    throw std::runtime_error(
                        "verifier structural violation: index outcome " +
                        std::to_string(idx) + " (" +
                        (duplicate ? "duplicate" : "out of range") +
                        ") has probability " + std::to_string(scale * dist[val]));
                }
                Frame g{f.psi, f.path};
                sim::project_register(g.psi, nq, v.index_registers[t], val);
                g.path.push_back(idx);
                next.push_back(std::move(g));
            }
        }
        frontier = std::move(next);
    }

    for (auto& f : frontier) {
        sim::apply_circuit(f.psi, nq, v.main_circuit);
        const double p1 = sim::bit_probability(f.psi, nq, v.output_qubit, 1);
        const double p0 = sim::bit_probability(f.psi, nq, v.output_qubit, 0);
        if (scale * p1 >= kPrune) {
            sink(f.path, true, scale * p1);
        }
        if (scale * p0 >= kPrune) {
            sink(f.path, false, scale * p0);
        }
    }
}

std::vector<BranchOutcome> aggregate_branches(
    const std::vector<WeightedPure>& comps,
    const std::function<void(const Eigen::VectorXcd&, double, const BranchSink&)>& run) {
    std::map<std::pair<std::vector<int>, bool>, double> acc;
    for (const auto& c : comps) {
        run(c.state, c.weight, [&acc](const std::vector<int>& path, bool accept, double p) {
            acc[{path, accept}] += p;
        });
    }
    std::vector<BranchOutcome> out;
    out.reserve(acc.size());
    for (const auto& [key, p] : acc) {
        out.push_back({key.first, key.second, p});
    }
    return out;
}

template <typename V>
std::pair<QueryPath, bool> sample_run_impl(const V& v, const std::string& x,
                                           const DensityMatrix& xi, RngStream& rng) {
    v.validate();
    check_x(x, v.n);
    const int nq = v.total_qubits();
    const int kp2 = v.proof_qubits();

    auto comps = pure_components(xi, kp2);
    double total = 0.0;
    for (const auto& c : comps) {
        total += c.weight;
    }
    double u = rng.next_double() * total;
    std::size_t pick = 0;
    for (; pick + 1 < comps.size(); ++pick) {
        u -= comps[pick].weight;
        if (u <= 0) {
            break;
        }
    }

    Eigen::VectorXcd psi = embed_proof(comps[pick].state, nq, kp2);
    apply_input_gates(psi, nq, x);

    QueryPath qp;
    qp.probability = 1.0;

    auto sample_register = [&](const std::vector<int>& reg) {
        const auto dist = sim::register_distribution(psi, nq, reg);
        const double norm = psi.squaredNorm();
        double r = rng.next_double() * norm;
        std::size_t val = 0;
        for (; val + 1 < dist.size(); ++val) {
            r -= dist[val];
            if (r <= 0) {
                break;
            }
        }
        const int idx = static_cast<int>(val);
        const bool duplicate =
            std::find(qp.indices.begin(), qp.indices.end(), idx) != qp.indices.end();
        if (idx >= kp2 || duplicate) {
            throw std::runtime_error("verifier structural violation during sampling");
        }
        qp.probability *= dist[val] / norm;
        sim::project_register(psi, nq, reg, val);
        psi /= psi.norm();
        qp.indices.push_back(idx);
    };

    if constexpr (std::is_same_v<V, AdaptiveVerifier>) {
        for (int t = 0; t < v.q; ++t) {
            sim::apply_circuit(psi, nq, v.circuits[t]);
            sample_register(v.index_register);
        }
        sim::apply_circuit(psi, nq, v.circuits[v.q]);
    } else {
        sim::apply_circuit(psi, nq, v.prep_circuit);
        for (int t = 0; t < v.q; ++t) {
            sample_register(v.index_registers[t]);
        }
        sim::apply_circuit(psi, nq, v.main_circuit);
    }

    const double p1 = sim::bit_probability(psi, nq, v.output_qubit, 1);
    const bool accept = rng.next_double() < p1;
    return {qp, accept};
}

}  // namespace

int index_register_size(int proof_qubits) {
    int r = 0;
    while ((1 << r) < proof_qubits) {
        ++r;
    }
    return r;
}

void AdaptiveVerifier::validate() const {
    if (n < 0 || p1 < 0 || k < 1 || p2 < 1 || q < 1) {
        throw std::invalid_argument("AdaptiveVerifier: bad register sizes");
    }
    if (q > proof_qubits()) {
        throw std::invalid_argument("AdaptiveVerifier: q exceeds proof length");
    }
    check_qubit_cap(total_qubits(), "AdaptiveVerifier");
    if (static_cast<int>(circuits.size()) != q + 1) {
        throw std::invalid_argument("AdaptiveVerifier: need exactly q+1 circuits");
    }
    if (static_cast<int>(index_register.size()) != index_register_size(proof_qubits())) {
        throw std::invalid_argument(
            "AdaptiveVerifier: index register must have ceil(log2(k*p2)) qubits");
    }
    check_register_block(index_register, n, p1, "index_register");
    if (output_qubit < 0 || output_qubit >= n + p1) {
        throw std::invalid_argument("AdaptiveVerifier: output qubit must be in A or B");
    }
    if (std::find(index_register.begin(), index_register.end(), output_qubit) !=
        index_register.end()) {
        throw std::invalid_argument("AdaptiveVerifier: output qubit inside index register");
    }
    for (int t = 0; t < q + 1; ++t) {
        const int allowed = (t < q) ? t : q;
        check_circuit_proof_locality(circuits[t], total_qubits(), proof_offset(), allowed,
                                     "AdaptiveVerifier circuit");
    }
}

void NonAdaptiveVerifier::validate() const {
    if (n < 0 || p1 < 0 || k < 1 || p2 < 1 || q < 1) {
        throw std::invalid_argument("NonAdaptiveVerifier: bad register sizes");
    }
    if (q > proof_qubits()) {
        throw std::invalid_argument("NonAdaptiveVerifier: q exceeds proof length");
    }
    check_qubit_cap(total_qubits(), "NonAdaptiveVerifier");
    if (static_cast<int>(index_registers.size()) != q) {
        throw std::invalid_argument("NonAdaptiveVerifier: need q index blocks");
    }
    std::set<int> used;
    const int r = index_register_size(proof_qubits());
    for (const auto& block : index_registers) {
        if (static_cast<int>(block.size()) != r) {
            throw std::invalid_argument("NonAdaptiveVerifier: index block size mismatch");
        }
        check_register_block(block, n, p1, "index block");
        for (int qubit : block) {
            if (!used.insert(qubit).second) {
                throw std::invalid_argument("NonAdaptiveVerifier: index blocks overlap");
            }
        }
    }
    if (output_qubit < 0 || output_qubit >= n + p1 || used.count(output_qubit) != 0) {
        throw std::invalid_argument("NonAdaptiveVerifier: bad output qubit");
    }
    check_circuit_proof_locality(prep_circuit, total_qubits(), proof_offset(), 0,
                                 "NonAdaptiveVerifier prep circuit");
    check_circuit_proof_locality(main_circuit, total_qubits(), proof_offset(), q,
                                 "NonAdaptiveVerifier main circuit");
}

ComplexMatrix path_operator(const AdaptiveVerifier& v, const std::string& x,
                            const std::vector<int>& path) {
    v.validate();
    check_x(x, v.n);
    if (static_cast<int>(path.size()) != v.q) {
        throw std::invalid_argument("path_operator: path must have q entries");
    }
    std::set<int> distinct(path.begin(), path.end());
    if (static_cast<int>(distinct.size()) != v.q) {
        throw std::invalid_argument("path_operator: path entries must be distinct");
    }
    for (int idx : path) {
        if (idx < 0 || idx >= v.proof_qubits()) {
            throw std::invalid_argument("path_operator: path index out of range");
        }
    }

    const int nq = v.total_qubits();
    const Eigen::Index dim = Eigen::Index{1} << nq;
    ComplexMatrix out(dim, dim);

    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        psi(col) = 1.0;
        apply_input_gates(psi, nq, x);
        for (int t = 0; t < v.q; ++t) {
            sim::apply_circuit(psi, nq, v.circuits[t]);
            sim::project_register(psi, nq, v.index_register,
                                  static_cast<std::uint64_t>(path[t]));
        }
        sim::apply_circuit(psi, nq, v.circuits[v.q]);
        sim::project_bit(psi, nq, v.output_qubit, 0);
        sim::apply_circuit_adjoint(psi, nq, v.circuits[v.q]);
        for (int t = v.q - 1; t >= 0; --t) {
            sim::project_register(psi, nq, v.index_register,
                                  static_cast<std::uint64_t>(path[t]));
            sim::apply_circuit_adjoint(psi, nq, v.circuits[t]);
        }
        apply_input_gates(psi, nq, x);  // X gates are self-inverse
        out.col(col) = psi;
    }
    return out;
}

std::vector<BranchOutcome> branch_distribution(const AdaptiveVerifier& v,
                                               const std::string& x,
                                               const DensityMatrix& xi) {
    v.validate();
    check_x(x, v.n);
    auto comps = pure_components(xi, v.proof_qubits());
    return aggregate_branches(comps, [&](const Eigen::VectorXcd& proof, double w,
                                         const BranchSink& sink) {
        adaptive_branches_pure(v, x, proof, w, sink);
    });
}

std::vector<BranchOutcome> branch_distribution(const NonAdaptiveVerifier& v,
                                               const std::string& x,
                                               const DensityMatrix& xi) {
    v.validate();
    check_x(x, v.n);
    auto comps = pure_components(xi, v.proof_qubits());
    return aggregate_branches(comps, [&](const Eigen::VectorXcd& proof, double w,
                                         const BranchSink& sink) {
        nonadaptive_branches_pure(v, x, proof, w, sink);
    });
}

std::vector<BranchOutcome> branch_distribution(const VerifierVariant& v,
                                               const std::string& x,
                                               const DensityMatrix& xi) {
    return std::visit([&](const auto& vv) { return branch_distribution(vv, x, xi); }, v);
}

double accept_probability_exact(const AdaptiveVerifier& v, const std::string& x,
                                const DensityMatrix& xi) {
    double p = 0.0;
    for (const auto& b : branch_distribution(v, x, xi)) {
        if (b.accept) {
            p += b.probability;
        }
    }
    return p;
}

double accept_probability_exact(const NonAdaptiveVerifier& v, const std::string& x,
                                const DensityMatrix& xi) {
    double p = 0.0;
    for (const auto& b : branch_distribution(v, x, xi)) {
        if (b.accept) {
            p += b.probability;
        }
    }
    return p;
}

double accept_probability_exact(const VerifierVariant& v, const std::string& x,
                                const DensityMatrix& xi) {
    return std::visit([&](const auto& vv) { return accept_probability_exact(vv, x, xi); },
                      v);
}

std::vector<QueryPath> path_distribution(const VerifierVariant& v, const std::string& x,
                                         const DensityMatrix& xi) {
    std::map<std::vector<int>, double> acc;
    for (const auto& b : branch_distribution(v, x, xi)) {
        acc[b.path] += b.probability;
    }
    std::vector<QueryPath> out;
    for (const auto& [path, p] : acc) {
        out.push_back({path, p});
    }
    return out;
}

std::pair<QueryPath, bool> sample_run(const AdaptiveVerifier& v, const std::string& x,
                                      const DensityMatrix& xi, RngStream& rng) {
    return sample_run_impl(v, x, xi, rng);
}

std::pair<QueryPath, bool> sample_run(const NonAdaptiveVerifier& v, const std::string& x,
                                      const DensityMatrix& xi, RngStream& rng) {
    return sample_run_impl(v, x, xi, rng);
}

std::pair<QueryPath, bool> sample_run(const VerifierVariant& v, const std::string& x,
                                      const DensityMatrix& xi, RngStream& rng) {
    return std::visit([&](const auto& vv) { return sample_run(vv, x, xi, rng); }, v);
}

std::uint64_t RepeatedVerifier::query_count() const {
    const int q = std::visit([](const auto& v) { return v.q; }, base);
    return repetitions * static_cast<std::uint64_t>(q);
}

std::uint64_t RepeatedVerifier::accept_count_threshold() const {
    const double raw = threshold * static_cast<double>(repetitions);
    const double t = std::ceil(raw - 1e-9);
    return t <= 0 ? 0 : static_cast<std::uint64_t>(t);
}

RepeatedVerifier parallel_repeat(VerifierVariant v, std::uint64_t repetitions,
                                 double threshold) {
    if (repetitions < 1) {
        throw std::invalid_argument("parallel_repeat: repetitions must be >= 1");
    }
    if (!(threshold > 0.0 && threshold < 1.0 + 1e-12)) {
        throw std::invalid_argument("parallel_repeat: threshold must be in (0, 1]");
    }
    std::visit([](const auto& vv) { vv.validate(); }, v);
    return RepeatedVerifier{std::move(v), repetitions, threshold};
}

double binomial_tail_geq(std::uint64_t n, double p, std::uint64_t threshold) {
    if (threshold == 0) {
        return 1.0;
    }
    if (threshold > n) {
        return 0.0;
    }
    if (p <= 0.0) {
        return 0.0;
    }
    if (p >= 1.0) {
        return 1.0;
    }
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
    double sum = 0.0;
    for (std::uint64_t k = threshold; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double lpmf = lgn - std::lgamma(kd + 1.0) -
                            std::lgamma(static_cast<double>(n - k) + 1.0) + kd * lp +
                            static_cast<double>(n - k) * lq;
        sum += std::exp(lpmf);
    }
    return std::min(1.0, sum);
}

double accept_probability_exact(const RepeatedVerifier& rv, const std::string& x,
                                const DensityMatrix& per_copy_proof) {
    const double p = accept_probability_exact(rv.base, x, per_copy_proof);
    return binomial_tail_geq(rv.repetitions, p, rv.accept_count_threshold());
}

bool sample_run(const RepeatedVerifier& rv, const std::string& x,
                const DensityMatrix& per_copy_proof, RngStream& rng) {
    std::uint64_t accepts = 0;
    for (std::uint64_t i = 0; i < rv.repetitions; ++i) {
        auto child = rng.child("repeat/" + std::to_string(i));
        if (sample_run(rv.base, x, per_copy_proof, child).second) {
            ++accepts;
        }
    }
    return accepts >= rv.accept_count_threshold();
}

std::uint64_t repetition_count(double c, double s, double t) {
    if (!(s >= 0.0 && c <= 1.0 && c > s)) {
        throw std::invalid_argument("repetition_count: need 0 <= s < c <= 1");
    }
    if (!(t > 0.0)) {
        throw std::invalid_argument("repetition_count: t must be positive");
    }
    const double r = 2.0 * t * std::log(2.0) / ((c - s) * (c - s));
    return static_cast<std::uint64_t>(std::ceil(r));
}

}  // namespace qpcp
