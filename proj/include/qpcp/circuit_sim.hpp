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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpcp/linalg.hpp"

namespace qpcp {

/// A fixed unitary applied to an ordered target list. targets[0] is the most
/// significant bit of the gate-matrix index (matching the global tensor
/// convention). `name` is set for gates from the named set {H, X, Y, Z, S, T,
/// CNOT, CZ} and empty for explicit matrices.
struct PlainGate {
    std::vector<int> targets;
    ComplexMatrix matrix;
    std::string name;

    void validate(int num_qubits) const;
};

struct SelectCase {
    std::uint64_t value = 0;
    std::vector<int> targets;
    ComplexMatrix matrix;
    std::string name;
};

/// Classically-controlled gate family keyed on the computational-basis value
/// of a control register (controls[0] = most significant bit). For a control
/// value with a listed case, the case unitary is applied to its targets; all
/// other control values act as identity. This is how a circuit acts on the
/// proof qubit designated by a previously measured index.
struct SelectGate {
    std::vector<int> controls;
    std::vector<SelectCase> cases;

    void validate(int num_qubits) const;
};

using GateSpec = std::variant<PlainGate, SelectGate>;
using Circuit = std::vector<GateSpec>;

PlainGate named_gate(const std::string& name, std::vector<int> targets);
ComplexMatrix named_gate_matrix(const std::string& name);

/// Proof register indices a gate can touch, per select case (a plain gate
/// yields one entry). Used by the structural verifier checks.
std::vector<std::vector<int>> gate_target_sets(const GateSpec& g);

namespace sim {

/// All routines act on a 2^num_qubits state vector laid out with qubit 0 as
/// the most significant index bit. `control` (when >= 0) restricts the
/// action to amplitudes where that extra qubit is |1>.

void apply_plain(Eigen::VectorXcd& psi, int num_qubits, const PlainGate& g,
                 int control = -1);
void apply_gate(Eigen::VectorXcd& psi, int num_qubits, const GateSpec& g,
                int control = -1);
void apply_gate_adjoint(Eigen::VectorXcd& psi, int num_qubits, const GateSpec& g,
                        int control = -1);
void apply_circuit(Eigen::VectorXcd& psi, int num_qubits, const Circuit& c,
                   int control = -1);
void apply_circuit_adjoint(Eigen::VectorXcd& psi, int num_qubits, const Circuit& c,
                           int control = -1);

/// Zeroes every amplitude where the register (MSB-first qubit list) does not
/// spell `value`. The state is left unnormalized; its squared norm is the
/// branch probability.
void project_register(Eigen::VectorXcd& psi, int num_qubits,
                      const std::vector<int>& reg, std::uint64_t value);

/// Probability that measuring `qubit` yields `bit` (squared norm of the
/// projected part).
double bit_probability(const Eigen::VectorXcd& psi, int num_qubits, int qubit, int bit);

void project_bit(Eigen::VectorXcd& psi, int num_qubits, int qubit, int bit);

/// Distribution over register values of an unnormalized state: entry v is the
/// squared norm of the value-v slice.
std::vector<double> register_distribution(const Eigen::VectorXcd& psi, int num_qubits,
                                          const std::vector<int>& reg);

std::uint64_t read_bits(std::uint64_t index, int num_qubits, const std::vector<int>& reg);

}  // namespace sim

}  // namespace qpcp
