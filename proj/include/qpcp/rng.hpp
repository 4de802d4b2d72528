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
#include <string_view>

namespace qpcp {

/// Splittable counter-based random stream. All randomness in the project
/// flows from a single 64-bit seed through streams of this type; substreams
/// are derived from stable string labels, so independent pipeline stages
/// draw from independent streams regardless of evaluation order.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(mix(seed ^ kRootTag)) {}

    /// Derive an independent substream from a stable label, e.g.
    /// "hadamard/term=3/perm=1/j=5". Does not advance this stream.
    RngStream child(std::string_view label) const;

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_double_open();

    /// Uniform integer in [0, n). n must be nonzero.
    std::uint64_t uniform_below(std::uint64_t n);

    bool bernoulli(double p) { return next_double() < p; }

    /// Standard normal via Box-Muller.
    double normal();

    /// Exact Binomial(n, p) draw. Uses a per-trial loop for small n, CDF
    /// inversion for small n*p and transformed rejection otherwise; all three
    /// paths sample the exact binomial distribution.
    std::uint64_t binomial(std::uint64_t n, double p);

  private:
    struct RawTag {};
    RngStream(RawTag, std::uint64_t state) : state_(state) {}

    static std::uint64_t mix(std::uint64_t x);

    static constexpr std::uint64_t kRootTag = 0x71706370726e6701ULL;
    std::uint64_t state_;
};

}  // namespace qpcp
