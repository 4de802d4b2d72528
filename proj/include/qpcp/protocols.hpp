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

#include <functional>
#include <optional>

#include "qpcp/reduction.hpp"
#include "qpcp/tomography.hpp"

namespace qpcp {

// Composite pipelines assembled from the other modules: non-adaptive
// simulation of adaptive verifiers, decision pipelines through the learned
// Hamiltonian, AND-composition, separable-Hamiltonian checking, and
// sequential same-proof error reduction.

struct NonadaptiveSimulation {
    RepeatedVerifier composite;
    LocalHamiltonian learned;
    LocalHamiltonian smoothed;

    double epsilon = 0.0;
    double delta = 0.0;
    int eta = 0;
    std::uint64_t gamma_prime = 0;
    std::uint64_t full_repetitions = 0;
    std::uint64_t executed_repetitions = 0;
    std::uint64_t reported_query_count = 0;  // q * full_repetitions
    double threshold = 0.0;                  // acceptance fraction actually used
    double smoothed_yes_energy = 0.0;        // (s + eps) / 2^(q+3)
    double smoothed_no_energy = 0.0;         // (c - eps) / 2^(q+3)
    double truncated_confidence = 0.0;       // Chernoff bound at the executed R
    double stated_threshold_fraction = 0.0;  // (c - s) / 2^(q+4), unused
};

/// Rounded learning -> smoothing -> energy-measurement verifier -> parallel
/// repetition. The full repetition count R = ceil(2 (2^(q+4)/(c-s))^2) is
/// reported; the executed composite is truncated to `cap` repetitions with
/// the implied confidence recorded alongside. The acceptance threshold is the
/// midpoint of the smoothed yes/no acceptance rates.
NonadaptiveSimulation nonadaptive_simulation(const AdaptiveVerifier& v,
                                             const std::string& x, double c, double s,
                                             RngStream rng, std::uint64_t cap = 64);

struct AndOfVerifiers {
    bool accept = false;             // sampled joint run
    double exact_probability = 0.0;  // product over the verifiers
    std::vector<double> per_verifier;
};

/// Runs every verifier on its own proof register (disjoint by construction:
/// one proof object per verifier) and accepts iff all accept.
AndOfVerifiers and_of_verifiers(const std::vector<VerifierVariant>& verifiers,
                                const std::vector<std::string>& inputs,
                                const std::vector<DensityMatrix>& proofs, RngStream& rng);

struct KSeparableReport {
    double a_prime = 0.0;
    double b_prime = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double delta = 0.0;      // per-register confidence budget, 1/(3k)
    double cldm_eps = 0.0;   // (beta - alpha) / 4
    double stated_delta = 0.0;  // k/3, unused

    bool check1 = false;  // witness matrices are density matrices
    bool check2 = false;  // witness energy <= a'
    bool check3 = false;  // per-register marginal consistency
    bool accept = false;
    double witness_energy = 0.0;
    std::vector<bool> register_consistent;
    std::string failure_reason;
};

/// Separable-Hamiltonian verification: the classical witness carries, per
/// term i and prover register j, the claimed state on the term's qubits
/// inside that register (a 0-qubit matrix [1] when the intersection is
/// empty); the quantum witness is a global state whose per-register marginals
/// are checked against the claims by tomography.
KSeparableReport k_separable_check(const LocalHamiltonian& h, int k, double a, double b,
                                   const std::vector<std::vector<DensityMatrix>>& classical_witness,
                                   const DensityMatrix& quantum_witness, RngStream rng);

using LhOracle = std::function<bool(const LocalHamiltonian&, double a, double b)>;

/// Ground-energy thresholding at the midpoint of the promise window.
bool exact_lh_oracle(const LocalHamiltonian& h, double a, double b);

struct QcmaReport {
    bool accept = false;
    double epsilon = 0.0;
    int eta = 0;
    double delta = 0.0;
    double a = 0.0;  // s + eps
    double b = 0.0;  // c - eps
    double stated_a = 0.0;  // c + eps/4, unused
    double stated_b = 0.0;  // c - eps/4, unused
    std::uint64_t gamma_prime = 0;
    LocalHamiltonian learned;
};

/// Rounded learning followed by a promise-gap decision on the learned
/// Hamiltonian through the supplied oracle (exact thresholding by default).
QcmaReport qcma_pipeline(const AdaptiveVerifier& v, const std::string& x, double c,
                         double s, const LhOracle& oracle, RngStream rng);

struct QmaMultiProverReport {
    bool accept = false;
    double epsilon = 0.0;
    int eta = 0;
    double a = 0.0;
    double b = 0.0;
    std::uint64_t gamma_prime = 0;
    LocalHamiltonian learned;
    KSeparableReport separable;
};

/// Multi-prover decision pipeline: rounded learning, then the separable check
/// with caller-supplied witnesses.
QmaMultiProverReport qma_for_qpcp(const AdaptiveVerifier& v, const std::string& x,
                                  double c, double s,
                                  const std::vector<std::vector<DensityMatrix>>& classical_witness,
                                  const DensityMatrix& quantum_witness, RngStream rng);

struct StrongErrorReduction {
    double majority_accept_probability = 0.0;
    bool accept = false;  // sampled from the majority probability
    /// Trace distance between the initial proof and the proof marginal
    /// conditioned on every run accepting.
    double proof_restoration_distance = 0.0;
    std::uint64_t leaf_count = 0;
};

/// Runs the verifier l times sequentially on the same proof register by exact
/// branch evolution: after each accepting run the main circuit is uncomputed,
/// the workspace is measured out and reset, and the next run starts on the
/// (possibly disturbed) residual proof. Accepts on a majority of outcomes.
StrongErrorReduction strong_error_reduction(const NonAdaptiveVerifier& v,
                                            const std::string& x, const DensityMatrix& xi,
                                            int l, RngStream& rng);

}  // namespace qpcp
