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

#include "qpcp/circuit_sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qpcp {

namespace {

void check_targets(const std::vector<int>& targets, int num_qubits, const char* what) {
    std::set<int> seen;
    for (int t : targets) {
        if (t < 0 || t >= num_qubits) {
            throw std::invalid_argument(std::string(what) + ": target out of range");
        }
        if (!seen.insert(t).second) {
            throw std::invalid_argument(std::string(what) + ": duplicate target");
        }
    }
}

void check_unitary(const ComplexMatrix& m, std::size_t num_targets, const char* what) {
    const Eigen::Index dim = Eigen::Index{1} << num_targets;
    if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument(std::string(what) +
                                    ": matrix dimension does not match target count");
    }
    const double dev = (m.adjoint() * m - ComplexMatrix::Identity(dim, dim))
                           .cwiseAbs()
                           .maxCoeff();
    if (dev > 1e-9) {
        throw std::invalid_argument(std::string(what) + ": matrix not unitary (dev " +
                                    std::to_string(dev) + ")");
    }
}

}  // namespace

ComplexMatrix named_gate_matrix(const std::string& name) {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m;
    if (name == "H") {
        m.resize(2, 2);
        m << s, s, s, -s;
    } else if (name == "X" || name == "Y" || name == "Z") {
        m = pauli_single(name[0]);
    } else if (name == "S") {
        m.resize(2, 2);
        m << 1, 0, 0, Complex(0, 1);
    } else if (name == "T") {
        m.resize(2, 2);
        m << 1, 0, 0, std::polar(1.0, M_PI / 4);
    } else if (name == "CNOT") {
        m = ComplexMatrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    } else if (name == "CZ") {
        m = ComplexMatrix::Identity(4, 4);
        m(3, 3) = -1;
    } else {
        throw std::invalid_argument("unknown named gate: " + name);
    }
    return m;
}

PlainGate named_gate(const std::string& name, std::vector<int> targets) {
    PlainGate g{std::move(targets), named_gate_matrix(name), name};
    if (g.targets.size() > 2) {
        throw std::invalid_argument("named gates act on at most 2 qubits");
    }
    check_unitary(g.matrix, g.targets.size(), "named_gate");
    return g;
}

void PlainGate::validate(int num_qubits) const {
    check_targets(targets, num_qubits, "PlainGate");
    if (!name.empty() && targets.size() > 2) {
        throw std::invalid_argument("PlainGate: named gates act on at most 2 qubits");
    }
    check_unitary(matrix, targets.size(), "PlainGate");
}

void SelectGate::validate(int num_qubits) const {
    check_targets(controls, num_qubits, "SelectGate controls");
    std::set<std::uint64_t> values;
    for (const auto& c : cases) {
        if (c.value >= (std::uint64_t{1} << controls.size())) {
            throw std::invalid_argument("SelectGate: case value exceeds control register");
        }
        if (!values.insert(c.value).second) {
            throw std::invalid_argument("SelectGate: duplicate case value");
        }
        check_targets(c.targets, num_qubits, "SelectGate case");
        for (int t : c.targets) {
            if (std::find(controls.begin(), controls.end(), t) != controls.end()) {
                throw std::invalid_argument("SelectGate: case targets overlap controls");
            }
        }
        check_unitary(c.matrix, c.targets.size(), "SelectGate case");
    }
}

std::vector<std::vector<int>> gate_target_sets(const GateSpec& g) {
    std::vector<std::vector<int>> out;
    if (std::holds_alternative<PlainGate>(g)) {
        out.push_back(std::get<PlainGate>(g).targets);
    } else {
        for (const auto& c : std::get<SelectGate>(g).cases) {
            out.push_back(c.targets);
        }
    }
    return out;
}

namespace sim {

std::uint64_t read_bits(std::uint64_t index, int num_qubits, const std::vector<int>& reg) {
    std::uint64_t v = 0;
    for (int q : reg) {
        v = (v << 1) | ((index >> (num_qubits - 1 - q)) & 1u);
    }
    return v;
}

namespace {

// Applies `matrix` to the amplitudes selected by `targets`, optionally
// restricted to indices matching (control bit) and (control-register value).
void apply_matrix(Eigen::VectorXcd& psi, int num_qubits,
                  const std::vector<int>& targets, const ComplexMatrix& matrix,
                  int control, const std::vector<int>* sel_controls,
                  std::uint64_t sel_value, bool adjoint) {
    const int m = static_cast<int>(targets.size());
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    const std::uint64_t sub = std::uint64_t{1} << m;

    std::vector<std::uint64_t> masks(m);
    for (int j = 0; j < m; ++j) {
        masks[j] = std::uint64_t{1} << (num_qubits - 1 - targets[j]);
    }
    std::uint64_t target_union = 0;
    for (auto msk : masks) {
        target_union |= msk;
    }
    const std::uint64_t control_mask =
        control >= 0 ? (std::uint64_t{1} << (num_qubits - 1 - control)) : 0;

    ComplexMatrix u = adjoint ? ComplexMatrix(matrix.adjoint()) : matrix;

    Eigen::VectorXcd scratch(sub);
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & target_union) != 0) {
            continue;  // visit each coset once via its all-zero-target member
        }
        if (control_mask != 0 && (base & control_mask) == 0) {
            continue;
        }
        if (sel_controls != nullptr &&
            read_bits(base, num_qubits, *sel_controls) != sel_value) {
            continue;
        }
        for (std::uint64_t s = 0; s < sub; ++s) {
            std::uint64_t idx = base;
            for (int j = 0; j < m; ++j) {
                if ((s >> (m - 1 - j)) & 1u) {
                    idx |= masks[j];
                }
            }
            scratch(static_cast<Eigen::Index>(s)) = psi(static_cast<Eigen::Index>(idx));
        }
        Eigen::VectorXcd out = u * scratch;
        for (std::uint64_t s = 0; s < sub; ++s) {
            std::uint64_t idx = base;
            for (int j = 0; j < m; ++j) {
                if ((s >> (m - 1 - j)) & 1u) {
                    idx |= masks[j];
                }
            }
            psi(static_cast<Eigen::Index>(idx)) = out(static_cast<Eigen::Index>(s));
        }
    }
}

}  // namespace

void apply_plain(Eigen::VectorXcd& psi, int num_qubits, const PlainGate& g, int control) {
    apply_matrix(psi, num_qubits, g.targets, g.matrix, control, nullptr, 0, false);
}

void apply_gate(Eigen::VectorXcd& psi, int num_qubits, const GateSpec& g, int control) {
    if (std::holds_alternative<PlainGate>(g)) {
        apply_plain(psi, num_qubits, std::get<PlainGate>(g), control);
        return;
    }
    const auto& sel = std::get<SelectGate>(g);
    for (const auto& c : sel.cases) {
        apply_matrix(psi, num_qubits, c.targets, c.matrix, control, &sel.controls,
                     c.value, false);
    }
}

void apply_gate_adjoint(Eigen::VectorXcd& psi, int num_qubits, const GateSpec& g,
                        int control) {
    if (std::holds_alternative<PlainGate>(g)) {
        const auto& pg = std::get<PlainGate>(g);
        apply_matrix(psi, num_qubits, pg.targets, pg.matrix, control, nullptr, 0, true);
        return;
    }
    const auto& sel = std::get<SelectGate>(g);
    for (const auto& c : sel.cases) {
        apply_matrix(psi, num_qubits, c.targets, c.matrix, control, &sel.controls,
                     c.value, true);
    }
}

void apply_circuit(Eigen::VectorXcd& psi, int num_qubits, const Circuit& c, int control) {
    for (const auto& g : c) {
        apply_gate(psi, num_qubits, g, control);
    }
}

void apply_circuit_adjoint(Eigen::VectorXcd& psi, int num_qubits, const Circuit& c,
                           int control) {
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        apply_gate_adjoint(psi, num_qubits, *it, control);
    }
}

void project_register(Eigen::VectorXcd& psi, int num_qubits,
                      const std::vector<int>& reg, std::uint64_t value) {
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (read_bits(i, num_qubits, reg) != value) {
            psi(static_cast<Eigen::Index>(i)) = 0.0;
        }
    }
}

double bit_probability(const Eigen::VectorXcd& psi, int num_qubits, int qubit, int bit) {
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    const std::uint64_t mask = std::uint64_t{1} << (num_qubits - 1 - qubit);
    double p = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        const bool is_one = (i & mask) != 0;
        if (is_one == (bit == 1)) {
            p += std::norm(psi(static_cast<Eigen::Index>(i)));
        }
    }
    return p;
}

void project_bit(Eigen::VectorXcd& psi, int num_qubits, int qubit, int bit) {
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    const std::uint64_t mask = std::uint64_t{1} << (num_qubits - 1 - qubit);
    for (std::uint64_t i = 0; i < dim; ++i) {
        const bool is_one = (i & mask) != 0;
        if (is_one != (bit == 1)) {
            psi(static_cast<Eigen::Index>(i)) = 0.0;
        }
    }
}

std::vector<double> register_distribution(const Eigen::VectorXcd& psi, int num_qubits,
                                          const std::vector<int>& reg) {
    std::vector<double> dist(std::size_t{1} << reg.size(), 0.0);
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    for (std::uint64_t i = 0; i < dim; ++i) {
        dist[read_bits(i, num_qubits, reg)] += std::norm(psi(static_cast<Eigen::Index>(i)));
    }
    return dist;
}

}  // namespace sim

}  // namespace qpcp
