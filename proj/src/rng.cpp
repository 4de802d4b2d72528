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

#include "qpcp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qpcp {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t RngStream::mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream RngStream::child(std::string_view label) const {
    return RngStream(RawTag{}, mix(state_ ^ fnv1a64(label) ^ kRootTag));
}

std::uint64_t RngStream::next_u64() {
    state_ += kGolden;
    return mix(state_);
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_double_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_below: n must be nonzero");
    }
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x > limit);
    return x % n;
}

double RngStream::normal() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t RngStream::binomial(std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binomial: p outside [0,1]");
    }
    if (n == 0 || p == 0.0) {
        return 0;
    }
    if (p == 1.0) {
        return n;
    }
    if (p > 0.5) {
        return n - binomial(n, 1.0 - p);
    }

    if (n <= 256) {
        std::uint64_t count = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            count += bernoulli(p) ? 1 : 0;
        }
        return count;
    }

    const double np = static_cast<double>(n) * p;
    if (np <= 30.0) {
        // CDF inversion via the pmf recurrence.
        const double q = 1.0 - p;
        const double ratio = p / q;
        double pmf = std::exp(static_cast<double>(n) * std::log1p(-p));
        double cdf = pmf;
        const double u = next_double();
        std::uint64_t k = 0;
        while (u > cdf && k < n) {
            ++k;
            pmf *= ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
            cdf += pmf;
        }
        return k;
    }

    // Transformed rejection with an exact log-pmf acceptance test.
    const double q = 1.0 - p;
    const double npq = np * q;
    const double spq = std::sqrt(npq);
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = np + 0.5;
    const double vr = 0.92 - 4.2 / b;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double lpq = std::log(p / q);
    const double m = std::floor((static_cast<double>(n) + 1.0) * p);
    const double h = std::lgamma(m + 1.0) + std::lgamma(static_cast<double>(n) - m + 1.0);

    for (;;) {
        const double u = next_double() - 0.5;
        double v = next_double();
        const double us = 0.5 - std::abs(u);
        const double kd = std::floor((2.0 * a / us + b) * u + c);
        if (kd < 0.0 || kd > static_cast<double>(n)) {
            continue;
        }
        if (us >= 0.07 && v <= vr) {
            return static_cast<std::uint64_t>(kd);
        }
        v = v * alpha / (a / (us * us) + b);
        const double lhs = std::log(v);
        const double rhs = h - std::lgamma(kd + 1.0) -
                           std::lgamma(static_cast<double>(n) - kd + 1.0) +
                           (kd - m) * lpq;
        if (lhs <= rhs) {
            return static_cast<std::uint64_t>(kd);
        }
    }
}

}  // namespace qpcp
