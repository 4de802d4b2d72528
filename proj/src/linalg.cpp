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

#include "qpcp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qpcp {

int max_qubits() {
    static const int cap = [] {
        const char* env = std::getenv("QPCP_MAX_QUBITS");
        if (env != nullptr) {
            const int v = std::atoi(env);
            if (v >= 1 && v <= 30) {
                return v;
            }
        }
        return 14;
    }();
    return cap;
}

void check_qubit_cap(int num_qubits, const char* where) {
    if (num_qubits > max_qubits()) {
        throw std::runtime_error(std::string(where) + ": " +
                                 std::to_string(num_qubits) +
                                 " qubits exceeds the dense-simulation cap of " +
                                 std::to_string(max_qubits()));
    }
}

StateVector StateVector::make(int num_qubits, Eigen::VectorXcd amplitudes) {
    StateVector s{num_qubits, std::move(amplitudes)};
    s.validate();
    return s;
}

void StateVector::validate() const {
    if (amplitudes.size() != (Eigen::Index{1} << num_qubits)) {
        throw std::invalid_argument("StateVector: amplitude count != 2^num_qubits");
    }
    if (!amplitudes.allFinite()) {
        throw std::invalid_argument("StateVector: non-finite amplitude");
    }
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw std::invalid_argument("StateVector: squared norm deviates from 1 by " +
                                    std::to_string(std::abs(norm2 - 1.0)));
    }
}

DensityMatrix DensityMatrix::make(int num_qubits, ComplexMatrix matrix) {
    DensityMatrix d{num_qubits, std::move(matrix)};
    d.validate();
    return d;
}

DensityMatrix DensityMatrix::unchecked(int num_qubits, ComplexMatrix matrix) {
    return DensityMatrix{num_qubits, std::move(matrix)};
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    return DensityMatrix{psi.num_qubits, psi.amplitudes * psi.amplitudes.adjoint()};
}

void DensityMatrix::validate(double psd_tol) const {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw std::invalid_argument("DensityMatrix: dimension != 2^num_qubits");
    }
    if (!matrix.allFinite()) {
        throw std::invalid_argument("DensityMatrix: non-finite entry");
    }
    if (!is_hermitian(matrix, 1e-10)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    }
    if (std::abs(matrix.trace().real() - 1.0) > 1e-10 ||
        std::abs(matrix.trace().imag()) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace deviates from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix(0.5 * (matrix + matrix.adjoint())), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                    std::to_string(es.eigenvalues().minCoeff()));
    }
}

void PauliWord::validate() const {
    for (char c : letters) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("PauliWord: letter outside {I,X,Y,Z}");
        }
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix identity_matrix(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep) {
    const int n = rho.num_qubits;
    for (int q : keep) {
        if (q < 0 || q >= n) {
            throw std::out_of_range("partial_trace: qubit index out of range");
        }
    }
    std::vector<int> keep_sorted(keep.begin(), keep.end());
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (keep.count(q) == 0) {
            traced.push_back(q);
        }
    }
    const int nk = static_cast<int>(keep_sorted.size());
    const int nt = static_cast<int>(traced.size());
    const Eigen::Index dk = Eigen::Index{1} << nk;
    const Eigen::Index dt = Eigen::Index{1} << nt;

    // Bit position of qubit g in a full index (qubit 0 is the MSB).
    auto bitpos = [n](int g) { return n - 1 - g; };

    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index rk = 0; rk < dk; ++rk) {
        for (Eigen::Index ck = 0; ck < dk; ++ck) {
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < dt; ++t) {
                std::uint64_t row = 0;
                std::uint64_t col = 0;
                for (int b = 0; b < nk; ++b) {
                    const std::uint64_t rbit = (rk >> (nk - 1 - b)) & 1u;
                    const std::uint64_t cbit = (ck >> (nk - 1 - b)) & 1u;
                    row |= rbit << bitpos(keep_sorted[b]);
                    col |= cbit << bitpos(keep_sorted[b]);
                }
                for (int b = 0; b < nt; ++b) {
                    const std::uint64_t tbit = (t >> (nt - 1 - b)) & 1u;
                    row |= tbit << bitpos(traced[b]);
                    col |= tbit << bitpos(traced[b]);
                }
                sum += rho.matrix(static_cast<Eigen::Index>(row),
                                  static_cast<Eigen::Index>(col));
            }
            out(rk, ck) = sum;
        }
    }
    return DensityMatrix::unchecked(nk, std::move(out));
}

double operator_norm(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("operator_norm: matrix must be square");
    }
    if (a.rows() == 0) {
        return 0.0;
    }
    ComplexMatrix gram = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix(0.5 * (gram + gram.adjoint())), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trace_norm_hermitian(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix(0.5 * (a + a.adjoint())), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.matrix.rows() != sigma.matrix.rows()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    return 0.5 * trace_norm_hermitian(rho.matrix - sigma.matrix);
}

double min_eigenvalue(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("min_eigenvalue: matrix must be square");
    }
    if (!is_hermitian(h, 1e-8)) {
        throw std::invalid_argument("min_eigenvalue: matrix not Hermitian within 1e-8");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix(0.5 * (h + h.adjoint())), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eigenvalue_hermitian(const ComplexMatrix& h) {
    if (!is_hermitian(h, 1e-8)) {
        throw std::invalid_argument("max_eigenvalue_hermitian: not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix(0.5 * (h + h.adjoint())), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

ComplexMatrix pauli_single(char letter) {
    ComplexMatrix m(2, 2);
    switch (letter) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument("pauli_single: unknown letter");
    }
    return m;
}

ComplexMatrix pauli_matrix(const PauliWord& w) {
    w.validate();
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (char c : w.letters) {
        out = kron(out, pauli_single(c));
    }
    return out;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double max_abs_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

Complex trace_product(const ComplexMatrix& m, const ComplexMatrix& rho) {
    return (m * rho).trace();
}

}  // namespace qpcp
