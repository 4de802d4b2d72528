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

#include <map>
#include <string>

#include "qpcp/json_io.hpp"
#include "qpcp/protocols.hpp"

namespace qpcp {

/// Named fixture families for tests and the CLI; every family is a pure
/// function of its seed.
struct FixtureBundle {
    std::map<std::string, Json> files;
};

/// Known families: reject-always, accept-always, random-q1, random-q2,
/// ghz-cldm, product-ksep. Throws on an unknown name.
FixtureBundle generate_fixture(const std::string& family, std::uint64_t seed);

/// Identity circuits; the output qubit stays |0>, so every proof is rejected.
AdaptiveVerifier make_reject_always(int n, int k, int p2);

/// Flips the output qubit in the final circuit; accepts every proof.
AdaptiveVerifier make_accept_always(int n, int k, int p2);

/// Seeded random adaptive verifier: a random index distribution, random
/// workspace texture, and per-index random couplings of the addressed proof
/// qubits into the output. For q = 2 the second index is the first shifted by
/// a fixture-specific stride, so duplicate outcomes have probability zero.
AdaptiveVerifier make_random_verifier(int q, int k, int p2, int n, RngStream& rng);

/// Five q=1 fixtures whose interferometer quadratures are exactly 0 or +-1,
/// i.e. on every rounding grid; used to exercise the rounded reduction's
/// run-to-run determinism.
AdaptiveVerifier make_grid_fixture(int variant);

/// Sequential-repetition fixtures: the yes variant copies the addressed proof
/// qubit into the output (completeness 1 on |11>), the no variant rotates the
/// output to a fixed acceptance probability of 0.3 regardless of the proof.
NonAdaptiveVerifier make_strongred_fixture(bool yes);

/// (sqrt(eps)|0> + sqrt(1-eps)|1>)^{x2}: acceptance 1 - eps under the yes
/// fixture.
DensityMatrix strongred_yes_proof(double eps);

MarginalSpec ghz_marginals(int n);

struct KsepFixture {
    LocalHamiltonian h;
    int k = 2;
    double a = 0.0;
    double b = 0.0;
    std::vector<std::vector<DensityMatrix>> classical_witness;
    DensityMatrix quantum_witness;
};

/// Two-register product instance with ground state |00>, plus the honest
/// witnesses for the separable check.
KsepFixture make_product_ksep();

ComplexMatrix ry_matrix(double theta);

}  // namespace qpcp
