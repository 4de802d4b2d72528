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

#include "qpcp/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qpcp {

namespace {

Eigen::VectorXcd ginibre_vector(Eigen::Index dim, RngStream& rng) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = Complex(rng.normal(), rng.normal());
    }
    return v;
}

ComplexMatrix ginibre_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            g(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    return g;
}

}  // namespace

StateVector random_state_vector(int num_qubits, RngStream& rng) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Eigen::VectorXcd v = ginibre_vector(dim, rng);
    v /= v.norm();
    return StateVector{num_qubits, std::move(v)};
}

ComplexMatrix random_unitary(Eigen::Index dim, RngStream& rng) {
    ComplexMatrix g = ginibre_matrix(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar.
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Complex d = r(i, i);
        const double mag = std::abs(d);
        q.col(i) *= (mag > 0) ? d / mag : Complex(1, 0);
    }
    return q;
}

DensityMatrix random_density_matrix(int num_qubits, RngStream& rng, Eigen::Index rank) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (rank <= 0 || rank > dim) {
        rank = dim;
    }
    ComplexMatrix g = ginibre_matrix(dim, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix::unchecked(num_qubits, std::move(rho));
}

ComplexMatrix random_hermitian(Eigen::Index dim, RngStream& rng) {
    ComplexMatrix g = ginibre_matrix(dim, dim, rng);
    return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_psd(Eigen::Index dim, double norm, RngStream& rng) {
    ComplexMatrix g = ginibre_matrix(dim, dim, rng);
    ComplexMatrix a = g * g.adjoint();
    a = 0.5 * (a + a.adjoint());
    const double cur = operator_norm(a);
    if (cur > 0) {
        a *= norm / cur;
    }
    return a;
}

ComplexMatrix state_prep_unitary(const Eigen::VectorXcd& target) {
    const Eigen::Index dim = target.size();
    if (std::abs(target.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("state_prep_unitary: target not a unit vector");
    }
    // QR of [target, e_j (j != k)] where e_k carries the largest component of
    // the target; that matrix is nonsingular, so Q completes the target to an
    // orthonormal basis. A phase fix pins the first column to target exactly.
    Eigen::Index k = 0;
    target.cwiseAbs().maxCoeff(&k);
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    m.col(k) = m.col(0);
    m.col(0) = target;
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    ComplexMatrix q = qr.householderQ();
    const Complex r00 = qr.matrixQR()(0, 0);
    q.col(0) *= r00 / std::abs(r00);
    return q;
}

StateVector basis_state(int num_qubits, std::uint64_t index) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (index >= static_cast<std::uint64_t>(dim)) {
        throw std::out_of_range("basis_state: index out of range");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector{num_qubits, std::move(v)};
}

StateVector ghz_state(int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(0) = 1.0 / std::sqrt(2.0);
    v(dim - 1) = 1.0 / std::sqrt(2.0);
    return StateVector{num_qubits, std::move(v)};
}

}  // namespace qpcp
