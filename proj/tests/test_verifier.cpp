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

#include <algorithm>
#include <map>

#include "qpcp/fixtures.hpp"
#include "qpcp/verifier.hpp"
#include "test_support.hpp"

using namespace qpcp;
using test::basis_density;

namespace {

/// tr[P rho0] with rho0 = |0><0|_{AB} (x) xi on the verifier's full register.
double path_operator_weight(const AdaptiveVerifier& v, const std::string& x,
                            const std::vector<int>& path, const DensityMatrix& xi) {
    const ComplexMatrix p = path_operator(v, x, path);
    const Eigen::Index ab_dim = Eigen::Index{1} << (v.n + v.p1);
    ComplexMatrix ab = ComplexMatrix::Zero(ab_dim, ab_dim);
    ab(0, 0) = 1.0;
    return trace_product(p, kron(ab, xi.matrix)).real();
}

std::vector<std::vector<int>> all_paths(int kp2, int q) {
    std::vector<std::vector<int>> paths;
    if (q == 1) {
        for (int i = 0; i < kp2; ++i) {
            paths.push_back({i});
        }
    } else {
        for (int i = 0; i < kp2; ++i) {
            for (int j = 0; j < kp2; ++j) {
                if (i != j) {
                    paths.push_back({i, j});
                }
            }
        }
    }
    return paths;
}

AdaptiveVerifier copy_qubit_verifier() {
    // Index register stays |0>, so proof qubit 0 is queried and copied to the
    // output via CNOT.
    AdaptiveVerifier v;
    v.n = 0;
    v.p1 = 2;
    v.k = 1;
    v.p2 = 2;
    v.q = 1;
    v.index_register = {0};
    v.output_qubit = 1;
    v.circuits.resize(2);
    SelectGate sel;
    sel.controls = {0};
    sel.cases.push_back({0, {2, 1}, named_gate_matrix("CNOT"), "CNOT"});
    sel.cases.push_back({1, {3, 1}, named_gate_matrix("CNOT"), "CNOT"});
    v.circuits[1].push_back(sel);
    v.validate();
    return v;
}

}  // namespace

TEST_CASE("reject-always verifier rejects and its path operators cover probability 1") {
    const auto v = make_reject_always(0, 1, 2);
    RngStream rng(1);
    for (int i = 0; i < 5; ++i) {
        auto stream = rng.child(std::to_string(i));
        const auto xi = random_density_matrix(2, stream);
        CHECK(accept_probability_exact(v, "", xi) == doctest::Approx(0.0));
        double total = 0.0;
        for (const auto& path : all_paths(2, 1)) {
            total += path_operator_weight(v, "", path, xi);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("accept-always verifier accepts and its reject weight vanishes") {
    const auto v = make_accept_always(0, 1, 2);
    RngStream rng(2);
    auto stream = rng.child("xi");
    const auto xi = random_density_matrix(2, stream);
    CHECK(accept_probability_exact(v, "", xi) == doctest::Approx(1.0));
    double total = 0.0;
    for (const auto& path : all_paths(2, 1)) {
        total += path_operator_weight(v, "", path, xi);
    }
    CHECK(total == doctest::Approx(0.0));
}

TEST_CASE("copying the queried qubit accepts exactly when it is |1>") {
    const auto v = copy_qubit_verifier();
    const auto one_zero = basis_density(2, 0b10);  // |1>|0>
    CHECK(accept_probability_exact(v, "", one_zero) == doctest::Approx(1.0));
    const auto zero_zero = basis_density(2, 0b00);
    CHECK(accept_probability_exact(v, "", zero_zero) == doctest::Approx(0.0));
}

TEST_CASE("path operators are PSD contractions and reproduce the branching result") {
    RngStream rng(3);
    for (int trial = 0; trial < 4; ++trial) {
        auto gen = rng.child("gen" + std::to_string(trial));
        const auto v = make_random_verifier(1, 1, 2, 1, gen);
        auto sgen = rng.child("xi" + std::to_string(trial));
        const auto xi = random_density_matrix(v.proof_qubits(), sgen);
        const std::string x = (trial % 2 == 0) ? "0" : "1";

        double reject_total = 0.0;
        for (const auto& path : all_paths(v.proof_qubits(), v.q)) {
            const ComplexMatrix p = path_operator(v, x, path);
            CHECK(is_hermitian(p, 1e-9));
            CHECK(min_eigenvalue(p) > -1e-9);
            CHECK(operator_norm(p) < 1.0 + 1e-9);
            reject_total += path_operator_weight(v, x, path, xi);
        }
        const double accept = accept_probability_exact(v, x, xi);
        CHECK(accept == doctest::Approx(1.0 - reject_total).epsilon(1e-9));
    }
}

TEST_CASE("branch probabilities sum to one for adaptive and non-adaptive verifiers") {
    RngStream rng(4);
    for (int trial = 0; trial < 3; ++trial) {
        auto gen = rng.child("g" + std::to_string(trial));
        const auto v = make_random_verifier(2, 1, 3, 0, gen);
        auto sgen = rng.child("s" + std::to_string(trial));
        const auto xi = random_density_matrix(3, sgen, trial == 0 ? 0 : 2);
        double total = 0.0;
        for (const auto& b : branch_distribution(v, "", xi)) {
            total += b.probability;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
    const auto nv = make_strongred_fixture(true);
    const auto xi = strongred_yes_proof(1e-4);
    double total = 0.0;
    for (const auto& b : branch_distribution(nv, "", xi)) {
        total += b.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("acceptance probability is affine in the proof state") {
    RngStream rng(5);
    auto gen = rng.child("gen");
    const auto v = make_random_verifier(1, 2, 2, 0, gen);
    auto s1 = rng.child("a");
    auto s2 = rng.child("b");
    const auto xi1 = random_density_matrix(4, s1);
    const auto xi2 = random_density_matrix(4, s2);
    const double lambda = 0.37;
    const DensityMatrix mix = DensityMatrix::unchecked(
        4, lambda * xi1.matrix + (1.0 - lambda) * xi2.matrix);
    const double lhs = accept_probability_exact(v, "", mix);
    const double rhs = lambda * accept_probability_exact(v, "", xi1) +
                       (1.0 - lambda) * accept_probability_exact(v, "", xi2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("non-adaptive index distribution is independent of the proof") {
    const auto v = make_strongred_fixture(true);
    RngStream rng(6);
    std::vector<QueryPath> reference;
    for (int i = 0; i < 10; ++i) {
        auto stream = rng.child(std::to_string(i));
        const auto xi = random_density_matrix(2, stream);
        const auto dist = path_distribution(VerifierVariant{v}, "", xi);
        if (i == 0) {
            reference = dist;
            continue;
        }
        REQUIRE(dist.size() == reference.size());
        for (std::size_t p = 0; p < dist.size(); ++p) {
            CHECK(dist[p].indices == reference[p].indices);
            CHECK(dist[p].probability ==
                  doctest::Approx(reference[p].probability).epsilon(1e-9));
        }
    }
}

TEST_CASE("sampling converges to the exact acceptance probability") {
    // Measuring either qubit of |+>|+> gives an exact coin flip.
    const auto v = copy_qubit_verifier();
    Eigen::VectorXcd plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const Eigen::VectorXcd both = kron(ComplexMatrix(plus), ComplexMatrix(plus));
    const auto xi = DensityMatrix::from_pure(StateVector::make(2, both));
    CHECK(accept_probability_exact(v, "", xi) == doctest::Approx(0.5).epsilon(1e-12));

    RngStream rng(7);
    int accepts = 0;
    for (int i = 0; i < 10000; ++i) {
        auto stream = rng.child(std::to_string(i));
        accepts += sample_run(v, "", xi, stream).second ? 1 : 0;
    }
    const double mean = accepts / 10000.0;
    CHECK(mean > 0.48);
    CHECK(mean < 0.52);
}

TEST_CASE("sampled path histogram matches the exact path distribution") {
    RngStream rng(8);
    auto gen = rng.child("gen");
    const auto v = make_random_verifier(1, 1, 3, 0, gen);
    auto sgen = rng.child("xi");
    const auto xi = random_density_matrix(3, sgen);

    const auto exact = path_distribution(VerifierVariant{v}, "", xi);
    std::map<std::vector<int>, double> expected;
    for (const auto& qp : exact) {
        expected[qp.indices] = qp.probability;
    }

    const int runs = 10000;
    std::map<std::vector<int>, int> histogram;
    auto sampler = rng.child("runs");
    for (int i = 0; i < runs; ++i) {
        auto stream = sampler.child(std::to_string(i));
        const auto [path, accept] = sample_run(v, "", xi, stream);
        histogram[path.indices] += 1;
    }
    for (const auto& [indices, p] : expected) {
        const double freq = histogram[indices] / static_cast<double>(runs);
        const double sigma = std::sqrt(p * (1.0 - p) / runs);
        CHECK(std::abs(freq - p) <= 3.0 * sigma + 1e-3);
    }
}

TEST_CASE("repetition_count evaluates its closed form") {
    CHECK(repetition_count(2.0 / 3.0, 1.0 / 3.0, 1.0) == 13);
    CHECK(repetition_count(1.0, 0.0, 1.0) == 2);
    CHECK(repetition_count(0.6, 0.5, 3.0) == 416);
    CHECK_THROWS_AS(repetition_count(0.3, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(repetition_count(0.5, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("single repetition at threshold one half reproduces the base verifier") {
    const auto v = copy_qubit_verifier();
    const auto composite = parallel_repeat(VerifierVariant{v}, 1, 0.5);
    RngStream rng(9);
    auto stream = rng.child("xi");
    const auto xi = random_density_matrix(2, stream);
    CHECK(accept_probability_exact(composite, "", xi) ==
          doctest::Approx(accept_probability_exact(v, "", xi)).epsilon(1e-12));
}

TEST_CASE("parallel repetition amplifies an honest product proof") {
    // Per-copy acceptance 0.9 via a tilted proof on the copy verifier.
    const auto v = copy_qubit_verifier();
    const auto proof = strongred_yes_proof(0.1);  // queried qubit reads |1> w.p. 0.9
    CHECK(accept_probability_exact(v, "", proof) == doctest::Approx(0.9).epsilon(1e-12));

    const auto composite = parallel_repeat(VerifierVariant{v}, 13, 0.5);
    const double amplified = accept_probability_exact(composite, "", proof);
    CHECK(amplified >= 0.99);

    // Chernoff floor at per-copy completeness 0.9 against soundness 0.1.
    const double floor = 1.0 - std::exp(-2.0 * 13.0 * std::pow((0.9 - 0.1) / 2.0, 2.0));
    CHECK(amplified >= floor);
}

TEST_CASE("duplicate-index verifiers are rejected during branching") {
    // A q=2 verifier whose register is left unchanged between the two
    // measurements reproduces the first outcome with probability 1.
    AdaptiveVerifier v;
    v.n = 0;
    v.p1 = 2;
    v.k = 1;
    v.p2 = 2;
    v.q = 2;
    v.index_register = {0};
    v.output_qubit = 1;
    v.circuits.resize(3);
    v.circuits[0].push_back(named_gate("H", {0}));
    v.validate();
    RngStream rng(10);
    auto stream = rng.child("xi");
    const auto xi = random_density_matrix(2, stream);
    CHECK_THROWS_AS(branch_distribution(v, "", xi), std::runtime_error);
}

TEST_CASE("structural validation rejects malformed verifiers") {
    auto v = make_reject_always(0, 1, 2);
    SUBCASE("wrong circuit count") {
        v.circuits.pop_back();
        CHECK_THROWS_AS(v.validate(), std::invalid_argument);
    }
    SUBCASE("output inside the index register") {
        v.output_qubit = v.index_register[0];
        CHECK_THROWS_AS(v.validate(), std::invalid_argument);
    }
    SUBCASE("first circuit touching the proof") {
        v.circuits[0].push_back(named_gate("X", {2}));
        CHECK_THROWS_AS(v.validate(), std::invalid_argument);
    }
    SUBCASE("non-unitary gate matrix") {
        PlainGate g;
        g.targets = {1};
        g.matrix = ComplexMatrix::Zero(2, 2);
        v.circuits[1].push_back(g);
        CHECK_THROWS_AS(v.validate(), std::invalid_argument);
    }
    SUBCASE("malformed path operator arguments") {
        CHECK_THROWS_AS(path_operator(v, "", {0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(path_operator(v, "", {7}), std::invalid_argument);
    }
}

TEST_CASE("sampled realized-path probability matches the exact table") {
    RngStream rng(11);
    auto gen = rng.child("gen");
    const auto v = make_random_verifier(1, 1, 2, 0, gen);
    auto sgen = rng.child("xi");
    // Pure proof: the realized-path probability then equals the aggregate.
    const auto xi = random_density_matrix(2, sgen, 1);
    std::map<std::vector<int>, double> expected;
    for (const auto& qp : path_distribution(VerifierVariant{v}, "", xi)) {
        expected[qp.indices] = qp.probability;
    }
    auto sampler = rng.child("runs");
    for (int i = 0; i < 200; ++i) {
        auto stream = sampler.child(std::to_string(i));
        const auto [path, accept] = sample_run(v, "", xi, stream);
        CHECK(path.probability ==
              doctest::Approx(expected.at(path.indices)).epsilon(1e-6));
    }
}
