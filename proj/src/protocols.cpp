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

#include "qpcp/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qpcp {

NonadaptiveSimulation nonadaptive_simulation(const AdaptiveVerifier& v,
                                             const std::string& x, double c, double s,
                                             RngStream rng, std::uint64_t cap) {
    if (!(c > s)) {
        throw std::invalid_argument("nonadaptive_simulation: need c > s");
    }
    const double eps = (c - s) / 4.0;
    const double delta = 1.0 - std::sqrt(2.0 / 3.0);
    const std::uint64_t gamma_prime = pipeline_gamma_prime(v.q, v.k, v.p2);
    const int eta = pipeline_eta(v.q, gamma_prime, eps);

    LocalHamiltonian learned =
        learn_hamiltonian_rounded(v, x, eta, delta, rng.child("learn"));
    LocalHamiltonian smoothed = smooth(learned, v.q);
    NonAdaptiveVerifier kv = kitaev_verifier(smoothed);

    const double pow_q4 = static_cast<double>(std::uint64_t{1} << (v.q + 4));
    const double pow_q3 = static_cast<double>(std::uint64_t{1} << (v.q + 3));
    const std::uint64_t r_full = static_cast<std::uint64_t>(
        std::ceil(2.0 * std::pow(pow_q4 / (c - s), 2.0)));
    const std::uint64_t r_exec = std::min(r_full, cap);
    const double yes_energy = (s + eps) / pow_q3;
    const double no_energy = (c - eps) / pow_q3;
    const double threshold = 1.0 - 0.5 * (yes_energy + no_energy);

    NonadaptiveSimulation out{
        parallel_repeat(VerifierVariant{kv}, r_exec, threshold),
        std::move(learned),
        std::move(smoothed)};
    out.epsilon = eps;
    out.delta = delta;
    out.eta = eta;
    out.gamma_prime = gamma_prime;
    out.full_repetitions = r_full;
    out.executed_repetitions = r_exec;
    out.reported_query_count = static_cast<std::uint64_t>(v.q) * r_full;
    out.smoothed_yes_energy = yes_energy;
    out.smoothed_no_energy = no_energy;
    out.threshold = threshold;
    const double gap_half = 0.5 * (out.smoothed_no_energy - out.smoothed_yes_energy);
    out.truncated_confidence =
        1.0 - std::exp(-2.0 * static_cast<double>(r_exec) * gap_half * gap_half);
    out.stated_threshold_fraction = (c - s) / pow_q4;
    return out;
}

AndOfVerifiers and_of_verifiers(const std::vector<VerifierVariant>& verifiers,
                                const std::vector<std::string>& inputs,
                                const std::vector<DensityMatrix>& proofs, RngStream& rng) {
    if (verifiers.size() != proofs.size() || verifiers.size() != inputs.size()) {
        throw std::invalid_argument("and_of_verifiers: list sizes differ");
    }
    AndOfVerifiers out;
    out.accept = true;
    out.exact_probability = 1.0;
    for (std::size_t i = 0; i < verifiers.size(); ++i) {
        const double p = accept_probability_exact(verifiers[i], inputs[i], proofs[i]);
        out.per_verifier.push_back(p);
        out.exact_probability *= p;
        auto stream = rng.child("and/" + std::to_string(i));
        if (!sample_run(verifiers[i], inputs[i], proofs[i], stream).second) {
            out.accept = false;
        }
    }
    return out;
}

namespace {

/// Tensor product of the per-register witness factors of one term, laid out
/// on the term's sorted support (register blocks are ascending, so the kron
/// over ascending j matches the sorted support).
ComplexMatrix witness_product(const std::vector<DensityMatrix>& factors) {
    ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
    for (const auto& f : factors) {
        acc = kron(acc, f.matrix);
    }
    return acc;
}

}  // namespace

KSeparableReport k_separable_check(const LocalHamiltonian& h, int k, double a, double b,
                                   const std::vector<std::vector<DensityMatrix>>& classical_witness,
                                   const DensityMatrix& quantum_witness, RngStream rng) {
    h.validate();
    if (!(b > a)) {
        throw std::invalid_argument("k_separable_check: need b > a");
    }
    if (k < 1 || h.num_qubits % k != 0) {
        throw std::invalid_argument("k_separable_check: k must divide the qubit count");
    }
    const int reg_size = h.num_qubits / k;
    const std::size_t m = h.terms.size();
    if (classical_witness.size() != m) {
        throw std::invalid_argument("k_separable_check: classical witness shape mismatch");
    }
    if (quantum_witness.num_qubits != h.num_qubits) {
        throw std::invalid_argument("k_separable_check: quantum witness size mismatch");
    }

    KSeparableReport rep;
    const double gap = b - a;
    rep.a_prime = a + gap / 4.0;
    rep.b_prime = b - gap / 4.0;
    rep.beta = gap / (2.0 * static_cast<double>(h.locality) * static_cast<double>(m));
    rep.alpha = rep.beta / std::pow(8.0, h.locality);
    rep.delta = 1.0 / (3.0 * static_cast<double>(k));
    rep.cldm_eps = (rep.beta - rep.alpha) / 4.0;
    rep.stated_delta = static_cast<double>(k) / 3.0;

    // Check 1: every claimed marginal is a density matrix.
    rep.check1 = true;
    for (std::size_t i = 0; i < m && rep.check1; ++i) {
        if (classical_witness[i].size() != static_cast<std::size_t>(k)) {
            throw std::invalid_argument("k_separable_check: witness row shape mismatch");
        }
        for (int j = 0; j < k; ++j) {
            const auto& w = classical_witness[i][static_cast<std::size_t>(j)];
            std::vector<int> expected;
            for (int qubit : h.terms[i].support) {
                if (qubit / reg_size == j) {
                    expected.push_back(qubit);
                }
            }
            if (w.num_qubits != static_cast<int>(expected.size())) {
                throw std::invalid_argument(
                    "k_separable_check: witness factor dimension mismatch");
            }
            if (w.num_qubits == 0) {
                continue;
            }
            if (!is_hermitian(w.matrix, 1e-9) ||
                std::abs(w.matrix.trace().real() - 1.0) > 1e-9 ||
                std::abs(w.matrix.trace().imag()) > 1e-9 ||
                min_eigenvalue(w.matrix) < -1e-9) {
                rep.check1 = false;
                rep.failure_reason = "witness factor (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") is not a density matrix";
                break;
            }
        }
    }
    if (!rep.check1) {
        return rep;
    }

    // Check 2: claimed product energy.
    for (std::size_t i = 0; i < m; ++i) {
        const ComplexMatrix sigma = witness_product(classical_witness[i]);
        rep.witness_energy += trace_product(h.terms[i].matrix, sigma).real();
    }
    rep.check2 = rep.witness_energy <= rep.a_prime;
    if (!rep.check2) {
        rep.failure_reason = "witness energy exceeds the acceptance threshold";
        return rep;
    }

    // Check 3: per-register consistency of the quantum witness with the
    // claimed marginals.
    rep.check3 = true;
    for (int j = 0; j < k; ++j) {
        std::vector<std::vector<int>> subsets;
        std::vector<DensityMatrix> targets;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<int> local;
            for (int qubit : h.terms[i].support) {
                if (qubit / reg_size == j) {
                    local.push_back(qubit - j * reg_size);
                }
            }
            if (local.empty()) {
                continue;
            }
            subsets.push_back(std::move(local));
            targets.push_back(classical_witness[i][static_cast<std::size_t>(j)]);
        }
        if (subsets.empty()) {
            rep.register_consistent.push_back(true);
            continue;
        }
        std::set<int> keep;
        for (int qb = j * reg_size; qb < (j + 1) * reg_size; ++qb) {
            keep.insert(qb);
        }
        const DensityMatrix reduced = partial_trace(quantum_witness, keep);
        auto stream = rng.child("cldm/register=" + std::to_string(j));
        const auto estimates = estimate_marginals(reduced, subsets, rep.cldm_eps,
                                                  rep.delta, stream);
        const auto decision = cldm_decide(estimates, targets, rep.alpha, rep.cldm_eps);
        rep.register_consistent.push_back(decision.accept);
        if (!decision.accept) {
            rep.check3 = false;
        }
    }
    if (!rep.check3) {
        rep.failure_reason = "marginal consistency check failed";
        return rep;
    }
    rep.accept = true;
    return rep;
}

bool exact_lh_oracle(const LocalHamiltonian& h, double a, double b) {
    return ground_energy(h) <= 0.5 * (a + b);
}

QcmaReport qcma_pipeline(const AdaptiveVerifier& v, const std::string& x, double c,
                         double s, const LhOracle& oracle, RngStream rng) {
    if (!(c > s)) {
        throw std::invalid_argument("qcma_pipeline: need c > s");
    }
    QcmaReport rep;
    rep.epsilon = (c - s) / 4.0;
    rep.delta = 1.0 - std::sqrt(2.0 / 3.0);
    rep.gamma_prime = pipeline_gamma_prime(v.q, v.k, v.p2);
    rep.eta = pipeline_eta(v.q, rep.gamma_prime, rep.epsilon);
    rep.a = s + rep.epsilon;
    rep.b = c - rep.epsilon;
    rep.stated_a = c + rep.epsilon / 4.0;
    rep.stated_b = c - rep.epsilon / 4.0;
    rep.learned = learn_hamiltonian_rounded(v, x, rep.eta, rep.delta, rng.child("learn"));
    rep.accept = oracle(rep.learned, rep.a, rep.b);
    return rep;
}

QmaMultiProverReport qma_for_qpcp(const AdaptiveVerifier& v, const std::string& x,
                                  double c, double s,
                                  const std::vector<std::vector<DensityMatrix>>& classical_witness,
                                  const DensityMatrix& quantum_witness, RngStream rng) {
    if (!(c > s)) {
        throw std::invalid_argument("qma_for_qpcp: need c > s");
    }
    QmaMultiProverReport rep;
    rep.epsilon = (c - s) / 4.0;
    rep.gamma_prime = pipeline_gamma_prime(v.q, v.k, v.p2);
    rep.eta = pipeline_eta(v.q, rep.gamma_prime, rep.epsilon);
    rep.a = s + rep.epsilon;
    rep.b = c - rep.epsilon;
    const double delta = 1.0 - std::sqrt(2.0 / 3.0);
    rep.learned = learn_hamiltonian_rounded(v, x, rep.eta, delta, rng.child("learn"));
    rep.separable = k_separable_check(rep.learned, v.k, rep.a, rep.b, classical_witness,
                                      quantum_witness, rng.child("ksep"));
    rep.accept = rep.separable.accept;
    return rep;
}

StrongErrorReduction strong_error_reduction(const NonAdaptiveVerifier& v,
                                            const std::string& x, const DensityMatrix& xi,
                                            int l, RngStream& rng) {
    v.validate();
    if (l < 1 || l % 2 == 0) {
        throw std::invalid_argument("strong_error_reduction: l must be odd");
    }
    const int nq = v.total_qubits();
    const int kp2 = v.proof_qubits();
    const int workspace = v.n + v.p1;
    constexpr double kPrune = 1e-12;
    constexpr std::size_t kLeafCap = 400000;

    std::vector<int> workspace_qubits(static_cast<std::size_t>(workspace));
    for (int i = 0; i < workspace; ++i) {
        workspace_qubits[static_cast<std::size_t>(i)] = i;
    }

    struct Leaf {
        Eigen::VectorXcd psi;  // unnormalized; workspace in |0...0>
        double weight;         // squared norm bookkeeping folded into psi
        int accepts;
    };

    // Initial ensemble from the proof's pure components.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix(0.5 * (xi.matrix + xi.matrix.adjoint())));
    std::vector<Leaf> leaves;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double w = es.eigenvalues()(i);
        if (w <= kPrune) {
            continue;
        }
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << nq);
        psi.head(Eigen::Index{1} << kp2) = std::sqrt(w) * es.eigenvectors().col(i);
        leaves.push_back({std::move(psi), w, 0});
    }

    auto apply_x = [&](Eigen::VectorXcd& psi) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == '1') {
                sim::apply_plain(psi, nq, named_gate("X", {static_cast<int>(i)}));
            }
        }
    };

    for (int run = 0; run < l; ++run) {
        std::vector<Leaf> next;
        for (auto& leaf : leaves) {
            apply_x(leaf.psi);
            sim::apply_circuit(leaf.psi, nq, v.prep_circuit);

            // Branch over the joint index outcome, block by block.
            struct Partial {
                Eigen::VectorXcd psi;
                std::vector<int> path;
            };
            std::vector<Partial> partials{{std::move(leaf.psi), {}}};
            for (int t = 0; t < v.q; ++t) {
                std::vector<Partial> grown;
                for (auto& p : partials) {
                    const auto dist =
                        sim::register_distribution(p.psi, nq, v.index_registers[t]);
                    for (std::size_t val = 0; val < dist.size(); ++val) {
                        if (dist[val] < kPrune) {
                            continue;
                        }
                        const int idx = static_cast<int>(val);
                        if (idx >= kp2 ||
                            std::find(p.path.begin(), p.path.end(), idx) != p.path.end()) {
                            throw std::runtime_error(
                                "strong_error_reduction: invalid index outcome");
                        }
                        Partial g{p.psi, p.path};
                        sim::project_register(g.psi, nq, v.index_registers[t], val);
                        g.path.push_back(idx);
                        grown.push_back(std::move(g));
                    }
                }
                partials = std::move(grown);
            }

            for (auto& p : partials) {
                sim::apply_circuit(p.psi, nq, v.main_circuit);
                for (int outcome = 0; outcome < 2; ++outcome) {
                    Eigen::VectorXcd branch = p.psi;
                    sim::project_bit(branch, nq, v.output_qubit, outcome);
                    if (branch.squaredNorm() < kPrune) {
                        continue;
                    }
                    if (outcome == 1) {
                        // Gentle restoration after an accepting run.
                        sim::apply_circuit_adjoint(branch, nq, v.main_circuit);
                    }
                    // Measure the workspace out and reset it to |0...0>; this
                    // realizes the fresh-ancilla channel while retaining the
                    // residual proof exactly.
                    const auto wdist =
                        sim::register_distribution(branch, nq, workspace_qubits);
                    for (std::size_t wval = 0; wval < wdist.size(); ++wval) {
                        if (wdist[wval] < kPrune) {
                            continue;
                        }
                        Eigen::VectorXcd reset =
                            Eigen::VectorXcd::Zero(branch.size());
                        const std::uint64_t proof_dim = std::uint64_t{1} << kp2;
                        std::uint64_t base = 0;
                        for (int b = 0; b < workspace; ++b) {
                            if ((wval >> (workspace - 1 - b)) & 1u) {
                                base |= std::uint64_t{1} << (nq - 1 - b);
                            }
                        }
                        for (std::uint64_t cidx = 0; cidx < proof_dim; ++cidx) {
                            reset(static_cast<Eigen::Index>(cidx)) =
                                branch(static_cast<Eigen::Index>(base | cidx));
                        }
                        next.push_back({std::move(reset), wdist[wval],
                                        leaf.accepts + (outcome == 1 ? 1 : 0)});
                    }
                }
            }
            if (next.size() > kLeafCap) {
                throw std::runtime_error("strong_error_reduction: branch explosion");
            }
        }
        leaves = std::move(next);
    }

    StrongErrorReduction out;
    out.leaf_count = leaves.size();

    double majority = 0.0;
    double all_accept_weight = 0.0;
    ComplexMatrix restored =
        ComplexMatrix::Zero(Eigen::Index{1} << kp2, Eigen::Index{1} << kp2);
    for (const auto& leaf : leaves) {
        const double w = leaf.psi.squaredNorm();
        if (leaf.accepts > l / 2) {
            majority += w;
        }
        if (leaf.accepts == l) {
            const Eigen::VectorXcd proof = leaf.psi.head(Eigen::Index{1} << kp2);
            restored += proof * proof.adjoint();
            all_accept_weight += w;
        }
    }
    out.majority_accept_probability = majority;
    if (all_accept_weight > kPrune) {
        restored /= restored.trace().real();
        out.proof_restoration_distance =
            trace_distance(DensityMatrix::unchecked(kp2, std::move(restored)), xi);
    } else {
        out.proof_restoration_distance = 1.0;
    }
    out.accept = rng.next_double() < out.majority_accept_probability;
    return out;
}

}  // namespace qpcp
