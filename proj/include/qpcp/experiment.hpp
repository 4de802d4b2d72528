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

#include <string>

#include "qpcp/json_io.hpp"

namespace qpcp {

struct ExperimentResult {
    Json body;      // deterministic given the config (timestamps live in meta)
    bool ok = true; // postcondition checks passed
};

/// Executes one named pipeline from a config object. The returned body embeds
/// the resolved config, every derived parameter, and the outputs, so a report
/// can be re-run byte-identically from its own body. Identical config (and
/// seed) always produces an identical body.
ExperimentResult run_config(const Json& config);

/// Loads a config file (or a report file, whose body.config is then used),
/// runs it, and writes {"meta": {...}, "body": {...}} to out_path when given.
ExperimentResult run_experiment(const std::string& config_path,
                                const std::string& out_path);

/// Wraps a body with the timing metadata envelope.
Json make_report(const Json& body, double wall_seconds);

}  // namespace qpcp
