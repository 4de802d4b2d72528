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

#include <optional>
#include <vector>

#include "qpcp/linalg.hpp"
#include "qpcp/rng.hpp"
#include "qpcp/verifier.hpp"

namespace qpcp {

struct HamiltonianTerm {
    std::vector<int> support;  // sorted qubit indices
    ComplexMatrix matrix;      // dimension 2^{|support|}
};

/// Sum of few-qubit terms, optionally weighted: H = sum_i w_i H_i when
/// weights are present, otherwise the plain sum.
struct LocalHamiltonian {
    int num_qubits = 0;
    int locality = 0;  // declared bound on |support|
    std::vector<HamiltonianTerm> terms;
    std::optional<std::vector<double>> weights;

    std::size_t term_count() const { return terms.size(); }

    /// Basic structural validation: supports sorted/in-range/bounded by the
    /// declared locality, term dimensions, Hermiticity within 1e-9; weights
    /// (when present) nonnegative and summing to 1 within 1e-9.
    void validate() const;

    /// Additional checks used by specific pipelines.
    void validate_psd(double tol = 1e-9) const;        // every term PSD
    void validate_normalized(double tol = 1e-9) const; // assembled norm <= 1

    /// Dense matrix on the full register (weights applied when present).
    ComplexMatrix assemble() const;

    /// Dense matrix of a single term embedded into the full register.
    ComplexMatrix embed_term(std::size_t i) const;
};

ComplexMatrix embed_on_support(const ComplexMatrix& m, const std::vector<int>& support,
                               int num_qubits);

/// Exact smallest eigenvalue of the assembled operator.
double ground_energy(const LocalHamiltonian& h);

/// Norm-redistribution transform: rescales every term by 1/2^(q+3) and moves
/// norm from heavy terms onto light ones so that, after the final x m
/// rescale, every term satisfies 0 <= H'_i <= I with uniform weights 1/m.
/// The assembled operator equals the input scaled by exactly 1/2^(q+3), so
/// the spectrum (and any promise gap) just scales. Output locality <= 2q.
LocalHamiltonian smooth(const LocalHamiltonian& h, int q);

/// Piece count floor(2 m alpha - 1) used when redistributing a heavy term.
std::int64_t smooth_redistribution_count(std::size_t m, double alpha);

/// Energy-measurement verifier for a weighted Hamiltonian: samples term i
/// with probability w_i, rotates a fresh output ancilla by the sampled
/// eigenvalue of that term, and accepts on |1>. Acceptance probability is
/// exactly 1 - tr[H xi]. Terms sharing a support set are merged (their convex
/// combination is again PSD and <= I); supports are padded to a common size.
NonAdaptiveVerifier kitaev_verifier(const LocalHamiltonian& h);

/// i.i.d. uniform term sampling followed by the smoothing transform, so every
/// output term is PSD with norm <= 1. The pre-smoothing average G can be
/// recovered exactly as assemble(output) * 2^(q+3).
LocalHamiltonian sample_terms(const LocalHamiltonian& h, std::uint64_t l, RngStream& rng);

/// ceil((128 / gamma^2) (n ln2 + ln(1/delta))).
std::uint64_t sample_count(double gamma, std::uint64_t n, double delta);

struct WeightedErrorReport {
    bool preconditions_ok = true;
    std::string precondition_message;
    double measured_norm = 0.0;
    double bound = 0.0;        // min(8 m^2 eps0, 6 eps1)
    double chain_bound = 0.0;  // 2 eps1 + eps1^2 + 4 m^2 eps0
    bool within_bound = false;
};

/// Verifies |w~_i - w_i| <= eps0 and ||H_i - H~_i|| <= eps1, renormalizes the
/// perturbed Hamiltonian (weights by their sum, terms by max(1, max norm)),
/// and measures ||H - H~|| against the tolerance bounds.
WeightedErrorReport weighted_error_check(const LocalHamiltonian& h,
                                         const LocalHamiltonian& h_tilde, double eps0,
                                         double eps1);

}  // namespace qpcp
