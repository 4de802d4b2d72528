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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "qpcp/linalg.hpp"
#include "qpcp/states.hpp"
#include "test_support.hpp"

using namespace qpcp;
using test::basis_density;
using test::maximally_mixed;

TEST_CASE("kron identities and the X with |0><0| case") {
    const ComplexMatrix i2 = identity_matrix(2);
    CHECK(max_abs_entry_diff(kron(i2, i2), identity_matrix(4)) == 0.0);

    const ComplexMatrix zz = kron(pauli_single('Z'), pauli_single('Z'));
    ComplexMatrix zz_expected = ComplexMatrix::Zero(4, 4);
    zz_expected(0, 0) = 1;
    zz_expected(1, 1) = -1;
    zz_expected(2, 2) = -1;
    zz_expected(3, 3) = 1;
    CHECK(max_abs_entry_diff(zz, zz_expected) == 0.0);

    ComplexMatrix ket0(2, 2);
    ket0 << 1, 0, 0, 0;
    const ComplexMatrix m = kron(pauli_single('X'), ket0);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 2) = 1;
    expected(2, 0) = 1;
    CHECK(max_abs_entry_diff(m, expected) == 0.0);
}

TEST_CASE("partial trace of simple states") {
    // Bell-state marginal is maximally mixed.
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const auto rho = DensityMatrix::from_pure(StateVector::make(2, bell));
    const auto reduced = partial_trace(rho, {0});
    CHECK(max_abs_entry_diff(reduced.matrix, 0.5 * identity_matrix(2)) < 1e-12);

    // Product factor extraction.
    const auto prod = basis_density(2, 0b01);  // |0>|1>
    const auto right = partial_trace(prod, {1});
    CHECK(max_abs_entry_diff(right.matrix, basis_density(1, 1).matrix) < 1e-12);

    CHECK_THROWS_AS(partial_trace(prod, {5}), std::out_of_range);
}

TEST_CASE("partial trace matches direct index summation on random states") {
    RngStream rng(101);
    const auto rho = random_density_matrix(3, rng);
    const auto reduced = partial_trace(rho, {0, 2});
    // Independent oracle: sum over the traced (middle) qubit explicitly in
    // the |q0 q1 q2> index convention.
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    for (int r0 = 0; r0 < 2; ++r0) {
        for (int r2 = 0; r2 < 2; ++r2) {
            for (int c0 = 0; c0 < 2; ++c0) {
                for (int c2 = 0; c2 < 2; ++c2) {
                    Complex sum = 0.0;
                    for (int t = 0; t < 2; ++t) {
                        sum += rho.matrix(r0 * 4 + t * 2 + r2, c0 * 4 + t * 2 + c2);
                    }
                    expected(r0 * 2 + r2, c0 * 2 + c2) = sum;
                }
            }
        }
    }
    CHECK(max_abs_entry_diff(reduced.matrix, expected) < 1e-12);
    CHECK(std::abs(reduced.matrix.trace().real() - 1.0) < 1e-10);
}

TEST_CASE("operator norm basics and the eigenvalue oracle") {
    CHECK(operator_norm(identity_matrix(4)) == doctest::Approx(1.0).epsilon(1e-12));
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = -0.7;
    CHECK(operator_norm(d) == doctest::Approx(0.7).epsilon(1e-12));

    RngStream rng(7);
    const ComplexMatrix h = random_hermitian(8, rng);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    const double expected = es.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(operator_norm(h) == doctest::Approx(expected).epsilon(1e-10));

    CHECK_THROWS_AS(operator_norm(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("trace distance on known pairs") {
    const auto zero = basis_density(1, 0);
    const auto one = basis_density(1, 1);
    CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace_distance(zero, maximally_mixed(1)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(trace_distance(zero, maximally_mixed(2)), std::invalid_argument);
}

TEST_CASE("min eigenvalue on known and random inputs") {
    CHECK(min_eigenvalue(pauli_single('Z')) == doctest::Approx(-1.0).epsilon(1e-12));
    ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
    proj(1, 1) = 1.0;
    CHECK(min_eigenvalue(proj) == doctest::Approx(0.0));

    RngStream rng(21);
    // 2-local operator on 3 qubits vs a dense eigensolve of the same matrix.
    const ComplexMatrix h2 = random_hermitian(4, rng);
    const ComplexMatrix full = kron(h2, identity_matrix(2));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(full, Eigen::EigenvaluesOnly);
    CHECK(min_eigenvalue(full) ==
          doctest::Approx(es.eigenvalues().minCoeff()).epsilon(1e-10));

    ComplexMatrix not_herm(2, 2);
    not_herm << 0, 1, 0, 0;
    CHECK_THROWS_AS(min_eigenvalue(not_herm), std::invalid_argument);
}

TEST_CASE("pauli_matrix matches kron products and squares to identity") {
    CHECK(max_abs_entry_diff(pauli_matrix({"I"}), identity_matrix(2)) == 0.0);
    ComplexMatrix zz = ComplexMatrix::Zero(4, 4);
    zz(0, 0) = 1;
    zz(1, 1) = -1;
    zz(2, 2) = -1;
    zz(3, 3) = 1;
    CHECK(max_abs_entry_diff(pauli_matrix({"ZZ"}), zz) == 0.0);
    CHECK(max_abs_entry_diff(pauli_matrix({"XY"}),
                             kron(pauli_single('X'), pauli_single('Y'))) == 0.0);

    RngStream rng(33);
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    for (int trial = 0; trial < 20; ++trial) {
        std::string word;
        const int len = 1 + static_cast<int>(rng.uniform_below(3));
        for (int i = 0; i < len; ++i) {
            word.push_back(letters[rng.uniform_below(4)]);
        }
        const ComplexMatrix p = pauli_matrix({word});
        CHECK(max_abs_entry_diff(p * p, identity_matrix(p.rows())) < 1e-12);
    }
}

TEST_CASE("trace distance satisfies the triangle inequality on random triples") {
    RngStream rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        auto stream = rng.child(std::to_string(trial));
        const auto a = random_density_matrix(2, stream);
        const auto b = random_density_matrix(2, stream);
        const auto c = random_density_matrix(2, stream);
        CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-9);
    }
}

TEST_CASE("trace distance is non-increasing under the partial trace") {
    RngStream rng(56);
    for (int trial = 0; trial < 20; ++trial) {
        auto stream = rng.child(std::to_string(trial));
        const auto a = random_density_matrix(3, stream);
        const auto b = random_density_matrix(3, stream);
        const double full = trace_distance(a, b);
        const double reduced =
            trace_distance(partial_trace(a, {0, 1}), partial_trace(b, {0, 1}));
        CHECK(reduced <= full + 1e-9);
    }
}

TEST_CASE("operator norm is multiplicative over tensor products") {
    RngStream rng(57);
    for (int trial = 0; trial < 20; ++trial) {
        auto stream = rng.child(std::to_string(trial));
        ComplexMatrix a(2, 2);
        ComplexMatrix b(4, 4);
        for (Eigen::Index i = 0; i < 2; ++i) {
            for (Eigen::Index j = 0; j < 2; ++j) {
                a(i, j) = Complex(stream.normal(), stream.normal());
            }
        }
        for (Eigen::Index i = 0; i < 4; ++i) {
            for (Eigen::Index j = 0; j < 4; ++j) {
                b(i, j) = Complex(stream.normal(), stream.normal());
            }
        }
        CHECK(operator_norm(kron(a, b)) ==
              doctest::Approx(operator_norm(a) * operator_norm(b)).epsilon(1e-9));
    }
}

TEST_CASE("partial trace preserves trace and hermiticity") {
    RngStream rng(58);
    for (int trial = 0; trial < 20; ++trial) {
        auto stream = rng.child(std::to_string(trial));
        const auto rho = random_density_matrix(4, stream);
        std::set<int> keep;
        keep.insert(static_cast<int>(stream.uniform_below(4)));
        keep.insert(static_cast<int>(stream.uniform_below(4)));
        const auto reduced = partial_trace(rho, keep);
        CHECK(std::abs(reduced.matrix.trace().real() - 1.0) < 1e-10);
        CHECK(is_hermitian(reduced.matrix, 1e-10));
    }
}

TEST_CASE("state and density validation rejects malformed inputs") {
    Eigen::VectorXcd v(2);
    v << 1.0, 1.0;
    CHECK_THROWS_AS(StateVector::make(1, v), std::invalid_argument);

    ComplexMatrix bad(2, 2);
    bad << 2, 0, 0, -1;
    CHECK_THROWS_AS(DensityMatrix::make(1, bad), std::invalid_argument);

    CHECK_THROWS_AS(PauliWord{"AZ"}.validate(), std::invalid_argument);
}
