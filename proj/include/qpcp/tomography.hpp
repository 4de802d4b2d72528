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

#pragma once

#include <cstdint>
#include <vector>

#include "qpcp/linalg.hpp"
#include "qpcp/rng.hpp"

namespace qpcp {

// Pauli-basis estimation of local marginals, consistency decisions between
// claimed and estimated marginals, and constructive covering sets of density
// matrices.

struct MarginalSpec {
    std::vector<std::vector<int>> subsets;  // each sorted, |C_i| <= q
    std::vector<DensityMatrix> targets;

    void validate(int num_qubits) const;
};

/// Mean of `shots` +-1 samples of the two-outcome measurement
/// {(P+I)/2, (I-P)/2}; unbiased estimator of tr[P rho].
double pauli_expectation(const DensityMatrix& rho, const PauliWord& w,
                         std::uint64_t shots, RngStream& rng);

/// Per-word shot count so each of the d^2 coefficients of a d-dimensional
/// marginal lands within eps/d^2 at confidence 1 - delta/(m d^2).
std::uint64_t marginal_shots(int subset_size, std::size_t num_subsets, double eps,
                             double delta);

/// Reconstructs each marginal as (1/d)(I + sum_j c~_j P_j) from sampled Pauli
/// coefficients (the identity coefficient is pinned to 1, so estimates are
/// Hermitian with unit trace). Every sample consumes one fresh simulated
/// copy. With probability >= 1 - delta all marginals land within trace norm
/// eps of the truth. Estimates are not projected back onto the PSD cone
/// unless psd_project is set (clip negative eigenvalues, renormalize).
std::vector<DensityMatrix> estimate_marginals(const DensityMatrix& rho,
                                              const std::vector<std::vector<int>>& subsets,
                                              double eps, double delta, RngStream& rng,
                                              bool psd_project = false);

struct CldmDecision {
    bool accept = false;
    double max_trace_norm = 0.0;  // max_i ||estimate_i - target_i||_1
    double threshold = 0.0;       // alpha + eps
};

/// Accept iff every estimate sits within trace norm alpha + eps of its target
/// (closed inequality; trace norm = twice the trace distance).
CldmDecision cldm_decide(const std::vector<DensityMatrix>& estimates,
                         const std::vector<DensityMatrix>& targets, double alpha,
                         double eps);

struct CldmCopyCount {
    std::uint64_t l = 0;       // tomography copies, constant fixed at 16
    double definetti_k = 0.0;  // (2 l delta^2 + l^2 n ln2) / (2 delta^2)
};

/// Copy counts for the consistency protocol: l = ceil(16 m q 16^q log2(m/delta)
/// / eps^2) and the permutation-symmetric register count k that l copies
/// require on an n-qubit state.
CldmCopyCount cldm_copy_count(std::uint64_t m, int q, int n, double eps, double delta);

struct CoveringAudit {
    std::uint64_t samples = 0;
    double max_min_distance = 0.0;
    bool ok = false;
};

struct CoveringSet {
    int num_qubits = 0;
    double epsilon = 0.0;
    std::vector<DensityMatrix> members;
    CoveringAudit audit;
};

/// Greedy covering-set construction on density matrices: sample random states
/// (partial trace of random bipartite pure states), keep any sample farther
/// than eps in trace distance from all current members, and stop after
/// `patience` consecutive rejections. The covering property is then
/// spot-checked on `audit_samples` fresh states.
CoveringSet build_covering_set(int num_qubits, double eps, RngStream& rng,
                               std::uint64_t patience = 10000,
                               std::uint64_t audit_samples = 2048);

/// Member minimizing the trace distance to rho; ties break toward the lowest
/// member index.
const DensityMatrix& project_to_covering(const DensityMatrix& rho, const CoveringSet& cs);

/// All Pauli words on `num_qubits` qubits in lexicographic I<X<Y<Z order.
std::vector<PauliWord> all_pauli_words(int num_qubits);

}  // namespace qpcp
