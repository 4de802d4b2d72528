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
#include <string>
#include <vector>

#include "qpcp/hamiltonian.hpp"
#include "qpcp/linalg.hpp"
#include "qpcp/rng.hpp"
#include "qpcp/verifier.hpp"

namespace qpcp {

// Construction of the local Hamiltonian induced by a verifier: exactly, by
// evaluating every path operator on computational sandwich states, and via
// simulated interferometric learning of the same matrix entries.

/// Exact induced Hamiltonian on the proof register: one q-local PSD term per
/// unordered q-subset of proof indices, summing path-operator sandwiches over
/// all orderings of the subset. For every proof xi,
/// accept_probability_exact(v, x, xi) == 1 - tr[H xi] and ||H|| <= 1.
LocalHamiltonian exact_hamiltonian(const AdaptiveVerifier& v, const std::string& x);

/// Signed {I,Z}-word expansion of a computational-basis projector:
/// |b><b| = (1/2^len) * sum_j a_j W_j with a_j in {-1,+1}.
std::vector<std::pair<int, PauliWord>> projector_decomposition(const std::string& q_state);

/// Number of interferometer shots per estimated part: ceil(ln(4/delta) / (2 eps^2)).
std::uint64_t hadamard_shots(double eps, double delta);

/// Interferometric estimate of <psi|W|phi> where |psi> = u_psi|0...0> and
/// |phi> = u_phi|0...0>. The controlled-W circuit is simulated on one extra
/// ancilla and both quadratures are estimated from +-1 samples; each part is
/// within eps of the truth with the usual Hoeffding confidence.
Complex hadamard_test(int num_qubits, const Circuit& w, const Circuit& u_psi,
                      const Circuit& u_phi, double eps, double delta, RngStream& rng);

/// Exact value of the same interferometer (no sampling); test oracle.
Complex hadamard_exact(int num_qubits, const Circuit& w, const Circuit& u_psi,
                       const Circuit& u_phi);

struct SignedCircuit {
    int coefficient = 1;
    Circuit circuit;
};

/// Exact linear-combination-of-unitaries form of a path operator. Every
/// projector occurrence in the path operator is expanded as (I + R)/2 with R
/// the reflection about the projected subspace, giving 2^(2q+1) unit-
/// coefficient circuits whose sum divided by `normalizer` reproduces the path
/// operator exactly. `wordwise_gamma` records the coarser circuit count
/// 2^(q+1) (k p2)^q obtained when index projectors are instead expanded into
/// {I,Z} words over a padded register; it parameterizes the failure-budget
/// formulas but is not the length of `terms`.
struct UnitaryDecomposition {
    std::vector<SignedCircuit> terms;
    std::uint64_t normalizer = 1;       // == terms.size() == 2^(2q+1)
    std::uint64_t wordwise_gamma = 1;   // 2^(q+1) (k p2)^q
};

UnitaryDecomposition unitary_decomposition(const AdaptiveVerifier& v, const std::string& x,
                                           const std::vector<int>& path);

std::uint64_t decomposition_size(int q);                 // 2^(2q+1)
std::uint64_t wordwise_gamma_formula(int q, int k_p2);   // 2^(q+1) (k p2)^q

/// Full-space matrix of a circuit (columns via statevector runs); test oracle.
ComplexMatrix circuit_matrix(const Circuit& c, int num_qubits);

Circuit circuit_adjoint(const Circuit& c);

/// Derived parameters of a learning run.
struct LearnSchedule {
    std::uint64_t omega = 0;          // C(k p2, q)
    std::uint64_t wordwise_gamma = 0; // failure-budget Gamma
    double eps_prime = 0.0;           // per-part interferometer precision
    double delta_prime = 0.0;         // per-estimate failure budget
    std::uint64_t shots_per_part = 0;
    int eta = 0;                      // 0 when unrounded
};

LearnSchedule learn_schedule(const AdaptiveVerifier& v, double eps, double delta);
LearnSchedule learn_schedule_rounded(const AdaptiveVerifier& v, int eta, double delta);

/// Estimates every term entry by interferometric sampling at the schedule's
/// precision, shifts any term with a negative minimum eigenvalue to PSD, and
/// normalizes the assembled operator to norm <= 1. With probability 1 - delta
/// the result satisfies |Pr[accept xi] - (1 - tr[H xi])| <= eps for all xi.
LocalHamiltonian learn_hamiltonian(const AdaptiveVerifier& v, const std::string& x,
                                   double eps, double delta, RngStream rng);

/// Rounded variant: every estimated quadrature is snapped to the eta-bit grid
/// (2^(eta-1)+1 evenly spaced points in [-1,1], ties toward -1) before
/// assembly, so independent successful runs produce bit-identical output.
LocalHamiltonian learn_hamiltonian_rounded(const AdaptiveVerifier& v, const std::string& x,
                                           int eta, double delta, RngStream rng);

/// Grid snap used by the rounded reduction.
double round_to_grid(double value, int eta);

/// Accuracy parameter the rounded reduction achieves: 4 |Omega| 2^(q+4) q! / (2^eta + 1).
double rounded_equivalent_eps(const AdaptiveVerifier& v, int eta);

/// Gamma' = (q+1) * 2 * k * p2 and the eta choice
/// ceil(q * log2(4 Gamma' (Gamma' + 1) / eps - 1)) used by the decision
/// pipelines to pick the rounding grid.
std::uint64_t pipeline_gamma_prime(int q, int k, int p2);
int pipeline_eta(int q, std::uint64_t gamma_prime, double eps);

std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k);
std::uint64_t factorial(std::uint64_t n);

}  // namespace qpcp
