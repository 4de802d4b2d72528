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

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "qpcp/hamiltonian.hpp"
#include "qpcp/linalg.hpp"
#include "qpcp/tomography.hpp"
#include "qpcp/verifier.hpp"

namespace qpcp {

using Json = nlohmann::json;

/// File-level failures (missing file, unwritable path) as distinct from
/// malformed content; the CLI maps these to exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

// Matrix encoding: {"rows": r, "cols": c, "entries": [[re, im], ...]},
// entries in row-major order. Doubles round-trip exactly through the
// serializer's shortest-representation output.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json state_to_json(const StateVector& s);
StateVector state_from_json(const Json& j);

Json density_to_json(const DensityMatrix& d);
DensityMatrix density_from_json(const Json& j);

/// Accepts either a density-matrix object or a pure-state object.
DensityMatrix proof_from_json(const Json& j);

Json gate_to_json(const GateSpec& g);
GateSpec gate_from_json(const Json& j);

Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

Json verifier_to_json(const VerifierVariant& v);
VerifierVariant verifier_from_json(const Json& j);

Json hamiltonian_to_json(const LocalHamiltonian& h);
LocalHamiltonian hamiltonian_from_json(const Json& j);

Json marginal_spec_to_json(const MarginalSpec& m);
MarginalSpec marginal_spec_from_json(const Json& j);

}  // namespace qpcp
