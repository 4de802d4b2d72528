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

#include "qpcp/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qpcp/states.hpp"

namespace qpcp {

void MarginalSpec::validate(int num_qubits) const {
    if (subsets.size() != targets.size()) {
        throw std::invalid_argument("MarginalSpec: subset/target count mismatch");
    }
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const auto& c = subsets[i];
        if (c.empty()) {
            throw std::invalid_argument("MarginalSpec: empty subset");
        }
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] < 0 || c[j] >= num_qubits) {
                throw std::invalid_argument("MarginalSpec: subset index out of range");
            }
            if (j > 0 && c[j] <= c[j - 1]) {
                throw std::invalid_argument("MarginalSpec: subset not sorted ascending");
            }
        }
        if (targets[i].num_qubits != static_cast<int>(c.size())) {
            throw std::invalid_argument("MarginalSpec: target dimension mismatch");
        }
    }
}

double pauli_expectation(const DensityMatrix& rho, const PauliWord& w,
                         std::uint64_t shots, RngStream& rng) {
    if (shots < 1) {
        throw std::invalid_argument("pauli_expectation: shots must be >= 1");
    }
    w.validate();
    if (w.num_qubits() != rho.num_qubits) {
        throw std::invalid_argument("pauli_expectation: word/state size mismatch");
    }
    const double expectation = trace_product(pauli_matrix(w), rho.matrix).real();
    const double p_plus = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
    const std::uint64_t plus = rng.binomial(shots, p_plus);
    return (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) /
           static_cast<double>(shots);
}

std::uint64_t marginal_shots(int subset_size, std::size_t num_subsets, double eps,
                             double delta) {
    if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("marginal_shots: eps, delta must be in (0,1)");
    }
    const double d2 = std::pow(4.0, subset_size);
    const double t = eps / d2;
    const double budget = delta / (static_cast<double>(num_subsets) * d2);
    return static_cast<std::uint64_t>(
        std::ceil(2.0 / (t * t) * std::log(2.0 / budget)));
}

std::vector<PauliWord> all_pauli_words(int num_qubits) {
    const char letters[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<PauliWord> out;
    const std::uint64_t count = std::uint64_t{1} << (2 * num_qubits);
    for (std::uint64_t j = 0; j < count; ++j) {
        std::string word(static_cast<std::size_t>(num_qubits), 'I');
        for (int i = 0; i < num_qubits; ++i) {
            word[static_cast<std::size_t>(i)] =
                letters[(j >> (2 * (num_qubits - 1 - i))) & 3u];
        }
        out.push_back(PauliWord{std::move(word)});
    }
    return out;
}

std::vector<DensityMatrix> estimate_marginals(const DensityMatrix& rho,
                                              const std::vector<std::vector<int>>& subsets,
                                              double eps, double delta, RngStream& rng,
                                              bool psd_project) {
    std::vector<DensityMatrix> out;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const auto& subset = subsets[i];
        const int s = static_cast<int>(subset.size());
        const Eigen::Index dim = Eigen::Index{1} << s;
        const DensityMatrix marginal =
            partial_trace(rho, std::set<int>(subset.begin(), subset.end()));
        const std::uint64_t shots = marginal_shots(s, subsets.size(), eps, delta);

        ComplexMatrix acc = ComplexMatrix::Identity(dim, dim);  // identity word pinned
        const auto words = all_pauli_words(s);
        for (std::size_t j = 1; j < words.size(); ++j) {
            auto stream =
                rng.child("marginal=" + std::to_string(i) + "/word=" + std::to_string(j));
            const double c = pauli_expectation(marginal, words[j], shots, stream);
            acc += c * pauli_matrix(words[j]);
        }
        ComplexMatrix estimate = acc / static_cast<double>(dim);

        if (psd_project) {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
                ComplexMatrix(0.5 * (estimate + estimate.adjoint())));
            Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
            const double tr = lam.sum();
            if (tr > 0) {
                lam /= tr;
            } else {
                lam.setConstant(1.0 / static_cast<double>(dim));
            }
            estimate = es.eigenvectors() * lam.asDiagonal() *
                       es.eigenvectors().adjoint();
        }
        out.push_back(DensityMatrix::unchecked(s, std::move(estimate)));
    }
    return out;
}

CldmDecision cldm_decide(const std::vector<DensityMatrix>& estimates,
                         const std::vector<DensityMatrix>& targets, double alpha,
                         double eps) {
    if (estimates.size() != targets.size()) {
        throw std::invalid_argument("cldm_decide: list sizes differ");
    }
    CldmDecision d;
    d.threshold = alpha + eps;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        if (estimates[i].matrix.rows() != targets[i].matrix.rows()) {
            throw std::invalid_argument("cldm_decide: dimension mismatch at " +
                                        std::to_string(i));
        }
        d.max_trace_norm =
            std::max(d.max_trace_norm,
                     trace_norm_hermitian(estimates[i].matrix - targets[i].matrix));
    }
    d.accept = d.max_trace_norm <= d.threshold;
    return d;
}

CldmCopyCount cldm_copy_count(std::uint64_t m, int q, int n, double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0) || m < 1 || q < 1 ||
        n < 1) {
        throw std::invalid_argument("cldm_copy_count: bad parameters");
    }
    CldmCopyCount c;
    const double l_real = 16.0 * static_cast<double>(m) * static_cast<double>(q) *
                          std::pow(16.0, q) *
                          std::log2(static_cast<double>(m) / delta) / (eps * eps);
    c.l = static_cast<std::uint64_t>(std::ceil(l_real));
    const double l = static_cast<double>(c.l);
    c.definetti_k = (2.0 * l * delta * delta +
                     l * l * static_cast<double>(n) * std::log(2.0)) /
                    (2.0 * delta * delta);
    return c;
}

CoveringSet build_covering_set(int num_qubits, double eps, RngStream& rng,
                               std::uint64_t patience, std::uint64_t audit_samples) {
    if (num_qubits < 1 || (Eigen::Index{1} << num_qubits) > 4) {
        throw std::invalid_argument("build_covering_set: dimension capped at 4");
    }
    if (!(eps > 0.0)) {
        throw std::invalid_argument("build_covering_set: eps must be positive");
    }

    CoveringSet cs;
    cs.num_qubits = num_qubits;
    cs.epsilon = eps;

    auto grow = rng.child("grow");
    std::uint64_t misses = 0;
    while (misses < patience) {
        DensityMatrix candidate = random_density_matrix(num_qubits, grow);
        double min_dist = 2.0;
        for (const auto& member : cs.members) {
            min_dist = std::min(min_dist, trace_distance(candidate, member));
        }
        if (cs.members.empty() || min_dist > eps) {
            cs.members.push_back(std::move(candidate));
            misses = 0;
        } else {
            ++misses;
        }
    }

    auto audit = rng.child("audit");
    cs.audit.samples = audit_samples;
    for (std::uint64_t i = 0; i < audit_samples; ++i) {
        DensityMatrix probe = random_density_matrix(num_qubits, audit);
        double min_dist = 2.0;
        for (const auto& member : cs.members) {
            min_dist = std::min(min_dist, trace_distance(probe, member));
        }
        cs.audit.max_min_distance = std::max(cs.audit.max_min_distance, min_dist);
    }
    cs.audit.ok = cs.audit.max_min_distance <= eps;
    return cs;
}

const DensityMatrix& project_to_covering(const DensityMatrix& rho, const CoveringSet& cs) {
    if (cs.members.empty()) {
        throw std::invalid_argument("project_to_covering: empty covering set");
    }
    std::size_t best = 0;
    double best_dist = trace_distance(rho, cs.members[0]);
    for (std::size_t i = 1; i < cs.members.size(); ++i) {
        const double d = trace_distance(rho, cs.members[i]);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return cs.members[best];
}

}  // namespace qpcp
