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

#include "qpcp/linalg.hpp"
#include "qpcp/rng.hpp"

namespace qpcp {

/// Haar-random pure state.
StateVector random_state_vector(int num_qubits, RngStream& rng);

/// Haar-random unitary (Ginibre + QR with phase fix).
ComplexMatrix random_unitary(Eigen::Index dim, RngStream& rng);

/// Random density matrix of the given rank (Ginibre G: rho = GG^dag / tr).
/// rank = 0 means full rank. Equivalent in distribution to tracing out an
/// ancilla of log2(rank) qubits from a random bipartite pure state.
DensityMatrix random_density_matrix(int num_qubits, RngStream& rng, Eigen::Index rank = 0);

/// Random Hermitian matrix with Gaussian entries, (G + G^dag)/2.
ComplexMatrix random_hermitian(Eigen::Index dim, RngStream& rng);

/// Random PSD matrix scaled so its operator norm equals `norm`.
ComplexMatrix random_psd(Eigen::Index dim, double norm, RngStream& rng);

/// Unitary whose first column is `target` (Householder completion).
/// target must be a unit vector.
ComplexMatrix state_prep_unitary(const Eigen::VectorXcd& target);

/// Computational basis state |index> on num_qubits qubits.
StateVector basis_state(int num_qubits, std::uint64_t index);

/// GHZ state (|0...0> + |1...1>)/sqrt(2).
StateVector ghz_state(int num_qubits);

}  // namespace qpcp
