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
#include "qpcp/states.hpp"

namespace qpcp::test {

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline DensityMatrix pure_qubit(Complex zero_amp, Complex one_amp) {
    Eigen::VectorXcd v(2);
    v << zero_amp, one_amp;
    v /= v.norm();
    return DensityMatrix::from_pure(StateVector::make(1, v));
}

inline DensityMatrix basis_density(int num_qubits, std::uint64_t index) {
    return DensityMatrix::from_pure(basis_state(num_qubits, index));
}

inline DensityMatrix maximally_mixed(int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    return DensityMatrix::unchecked(
        num_qubits, ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace qpcp::test
