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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace qpcp {

// Dense complex linear algebra over small Hilbert spaces. Everything here is
// exact up to floating point and serves as the oracle layer the rest of the
// project is tested against.
//
// Tensor convention used throughout: qubit 0 is the leftmost tensor factor,
// i.e. the most significant bit of a computational-basis index. A basis state
// |b_0 b_1 ... b_{n-1}> has index sum_g b_g << (n-1-g).

using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Maximum total qubit count for dense simulation. Reads QPCP_MAX_QUBITS from
/// the environment once; defaults to 14.
int max_qubits();

/// Throws std::runtime_error if num_qubits exceeds max_qubits().
void check_qubit_cap(int num_qubits, const char* where);

struct StateVector {
    int num_qubits = 0;
    Eigen::VectorXcd amplitudes;

    static StateVector make(int num_qubits, Eigen::VectorXcd amplitudes);
    void validate() const;  // unit norm within 1e-10, finite entries
};

struct DensityMatrix {
    int num_qubits = 0;
    ComplexMatrix matrix;

    /// Validating constructor: Hermitian within 1e-10, unit trace within
    /// 1e-10, eigenvalues >= -1e-10.
    static DensityMatrix make(int num_qubits, ComplexMatrix matrix);
    /// No validation; for estimators whose raw output may dip below PSD.
    static DensityMatrix unchecked(int num_qubits, ComplexMatrix matrix);
    static DensityMatrix from_pure(const StateVector& psi);

    void validate(double psd_tol = 1e-10) const;
};

struct PauliWord {
    std::string letters;  // over {I, X, Y, Z}

    int num_qubits() const { return static_cast<int>(letters.size()); }
    void validate() const;
};

/// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix identity_matrix(Eigen::Index dim);

/// Reduced density matrix on the qubits in `keep` (any order; the result is
/// laid out in ascending qubit order). Preserves trace and Hermiticity.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// (1/2) ||rho - sigma||_1, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Sum of absolute eigenvalues of a Hermitian matrix (the trace norm).
double trace_norm_hermitian(const ComplexMatrix& a);

/// Smallest eigenvalue of a Hermitian matrix. Throws if the input deviates
/// from Hermitian by more than 1e-8; symmetrizes (A + A^dag)/2 before the
/// eigensolve to cancel accumulated rounding.
double min_eigenvalue(const ComplexMatrix& h);

double max_eigenvalue_hermitian(const ComplexMatrix& h);

/// Dense matrix of a Pauli word (2^n dimensional, unitary and Hermitian).
ComplexMatrix pauli_matrix(const PauliWord& w);

ComplexMatrix pauli_single(char letter);

bool is_hermitian(const ComplexMatrix& a, double tol);

double max_abs_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// <a|M|b> style trace: Re/Im-exact tr[M rho].
Complex trace_product(const ComplexMatrix& m, const ComplexMatrix& rho);

}  // namespace qpcp
