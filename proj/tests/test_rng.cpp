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

#include <cmath>
#include <vector>

#include "qpcp/rng.hpp"

using qpcp::RngStream;

TEST_CASE("streams are deterministic and label-separated") {
    RngStream a(42);
    RngStream b(42);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() == b.next_u64());

    RngStream root(7);
    auto c1 = root.child("alpha");
    auto c2 = root.child("alpha");
    auto c3 = root.child("beta");
    CHECK(c1.next_u64() == c2.next_u64());
    CHECK(c1.next_u64() != c3.next_u64());
}

TEST_CASE("uniform doubles live in [0,1) and have sane mean") {
    RngStream rng(1);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 20000 - 0.5) < 0.01);
}

TEST_CASE("uniform_below stays in range and is roughly uniform") {
    RngStream rng(3);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto v = rng.uniform_below(7);
        REQUIRE(v < 7);
        ++counts[static_cast<int>(v)];
    }
    for (int c : counts) {
        CHECK(std::abs(c - 10000) < 500);
    }
}

TEST_CASE("normal draws match the first two moments") {
    RngStream rng(5);
    double sum = 0.0;
    double sum2 = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sum2 / n - 1.0) < 0.03);
}

TEST_CASE("binomial sampler matches moments across regimes") {
    struct Case {
        std::uint64_t n;
        double p;
    };
    // Covers the per-trial loop, CDF inversion, and transformed rejection.
    const Case cases[] = {{100, 0.25}, {5000, 0.001}, {100000, 0.3}, {2000000, 0.49}};
    RngStream rng(11);
    for (const auto& c : cases) {
        auto stream = rng.child("case");
        const int reps = 4000;
        double sum = 0.0;
        double sum2 = 0.0;
        for (int i = 0; i < reps; ++i) {
            const double v = static_cast<double>(stream.binomial(c.n, c.p));
            REQUIRE(v <= static_cast<double>(c.n));
            sum += v;
            sum2 += v * v;
        }
        const double mean = sum / reps;
        const double var = sum2 / reps - mean * mean;
        const double true_mean = static_cast<double>(c.n) * c.p;
        const double true_var = true_mean * (1.0 - c.p);
        const double mean_tol = 6.0 * std::sqrt(true_var / reps);
        CHECK(std::abs(mean - true_mean) < mean_tol);
        CHECK(var > 0.8 * true_var);
        CHECK(var < 1.25 * true_var);
    }
}

TEST_CASE("binomial edge cases") {
    RngStream rng(13);
    CHECK(rng.binomial(0, 0.5) == 0);
    CHECK(rng.binomial(100, 0.0) == 0);
    CHECK(rng.binomial(100, 1.0) == 100);
    CHECK_THROWS(rng.binomial(10, 1.5));
}

TEST_CASE("rejection sampler agrees with the per-trial loop in distribution") {
    // n * p > 30 forces the rejection path; the reference draws come from an
    // explicit Bernoulli loop. Compare empirical CDFs.
    const std::uint64_t n = 2000;
    const double p = 0.11;
    RngStream loop_rng(17);
    RngStream btrs_rng(19);
    const int reps = 20000;
    std::vector<int> loop_counts(n + 1, 0);
    std::vector<int> btrs_counts(n + 1, 0);
    for (int i = 0; i < reps; ++i) {
        std::uint64_t direct = 0;
        for (std::uint64_t t = 0; t < n; ++t) {
            direct += loop_rng.bernoulli(p) ? 1 : 0;
        }
        ++loop_counts[static_cast<int>(direct)];
        ++btrs_counts[static_cast<int>(btrs_rng.binomial(n, p))];
    }
    double cdf_gap = 0.0;
    double loop_cdf = 0.0;
    double btrs_cdf = 0.0;
    for (std::uint64_t k = 0; k <= n; ++k) {
        loop_cdf += static_cast<double>(loop_counts[static_cast<int>(k)]) / reps;
        btrs_cdf += static_cast<double>(btrs_counts[static_cast<int>(k)]) / reps;
        cdf_gap = std::max(cdf_gap, std::abs(loop_cdf - btrs_cdf));
    }
    // Two-sample Kolmogorov-Smirnov 1% critical value at these sizes is ~0.0163.
    CHECK(cdf_gap < 0.0163);
}
