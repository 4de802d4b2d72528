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

#include "qpcp/json_io.hpp"

#include <fstream>

namespace qpcp {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("parse error in " + path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (rows < 0 || cols < 0 ||
        entries.size() != static_cast<std::size_t>(rows * cols)) {
        throw std::invalid_argument("matrix: rows*cols != entry count");
    }
    ComplexMatrix m(rows, cols);
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c, ++i) {
            const auto& e = entries[i];
            m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("matrix: non-finite entry");
    }
    return m;
}

Json state_to_json(const StateVector& s) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
        amps.push_back(Json::array({s.amplitudes(i).real(), s.amplitudes(i).imag()}));
    }
    return Json{{"num_qubits", s.num_qubits}, {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const Json& j) {
    const int nq = j.at("num_qubits").get<int>();
    const auto& amps = j.at("amplitudes");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) =
            Complex(amps[i].at(0).get<double>(), amps[i].at(1).get<double>());
    }
    return StateVector::make(nq, std::move(v));
}

Json density_to_json(const DensityMatrix& d) {
    return Json{{"num_qubits", d.num_qubits}, {"matrix", matrix_to_json(d.matrix)}};
}

DensityMatrix density_from_json(const Json& j) {
    return DensityMatrix::make(j.at("num_qubits").get<int>(),
                               matrix_from_json(j.at("matrix")));
}

DensityMatrix proof_from_json(const Json& j) {
    if (j.contains("matrix")) {
        return density_from_json(j);
    }
    if (j.contains("amplitudes")) {
        return DensityMatrix::from_pure(state_from_json(j));
    }
    throw std::invalid_argument("proof: expected a density matrix or a state vector");
}

Json gate_to_json(const GateSpec& g) {
    if (std::holds_alternative<PlainGate>(g)) {
        const auto& pg = std::get<PlainGate>(g);
        Json out{{"targets", pg.targets}};
        if (!pg.name.empty()) {
            out["gate"] = pg.name;
        } else {
            out["unitary"] = matrix_to_json(pg.matrix);
        }
        return out;
    }
    const auto& sg = std::get<SelectGate>(g);
    Json cases = Json::array();
    for (const auto& c : sg.cases) {
        Json cj{{"value", c.value}, {"targets", c.targets}};
        if (!c.name.empty()) {
            cj["gate"] = c.name;
        } else {
            cj["unitary"] = matrix_to_json(c.matrix);
        }
        cases.push_back(std::move(cj));
    }
    return Json{{"select", Json{{"controls", sg.controls}, {"cases", std::move(cases)}}}};
}

GateSpec gate_from_json(const Json& j) {
    if (j.contains("select")) {
        const auto& sj = j.at("select");
        SelectGate g;
        g.controls = sj.at("controls").get<std::vector<int>>();
        for (const auto& cj : sj.at("cases")) {
            SelectCase c;
            c.value = cj.at("value").get<std::uint64_t>();
            c.targets = cj.at("targets").get<std::vector<int>>();
            if (cj.contains("gate")) {
                c.name = cj.at("gate").get<std::string>();
                c.matrix = named_gate_matrix(c.name);
            } else {
                c.matrix = matrix_from_json(cj.at("unitary"));
            }
            g.cases.push_back(std::move(c));
        }
        return g;
    }
    PlainGate g;
    g.targets = j.at("targets").get<std::vector<int>>();
    if (j.contains("gate")) {
        g.name = j.at("gate").get<std::string>();
        g.matrix = named_gate_matrix(g.name);
    } else if (j.contains("unitary")) {
        g.matrix = matrix_from_json(j.at("unitary"));
    } else {
        throw std::invalid_argument("gate: expected \"gate\", \"unitary\" or \"select\"");
    }
    return g;
}

Json circuit_to_json(const Circuit& c) {
    Json out = Json::array();
    for (const auto& g : c) {
        out.push_back(gate_to_json(g));
    }
    return out;
}

Circuit circuit_from_json(const Json& j) {
    Circuit c;
    for (const auto& gj : j) {
        c.push_back(gate_from_json(gj));
    }
    return c;
}

Json verifier_to_json(const VerifierVariant& v) {
    Json out;
    std::visit(
        [&out](const auto& vv) {
            out["n"] = vv.n;
            out["p1"] = vv.p1;
            out["k"] = vv.k;
            out["p2"] = vv.p2;
            out["q"] = vv.q;
            out["output_qubit"] = vv.output_qubit;
        },
        v);
    if (std::holds_alternative<AdaptiveVerifier>(v)) {
        const auto& av = std::get<AdaptiveVerifier>(v);
        out["type"] = "adaptive";
        out["index_register"] = av.index_register;
        Json circuits = Json::array();
        for (const auto& c : av.circuits) {
            circuits.push_back(circuit_to_json(c));
        }
        out["circuits"] = std::move(circuits);
    } else {
        const auto& nv = std::get<NonAdaptiveVerifier>(v);
        out["type"] = "nonadaptive";
        out["index_registers"] = nv.index_registers;
        out["circuits"] =
            Json::array({circuit_to_json(nv.prep_circuit), circuit_to_json(nv.main_circuit)});
    }
    return out;
}

VerifierVariant verifier_from_json(const Json& j) {
    const std::string type = j.value("type", "adaptive");
    if (type == "adaptive") {
        AdaptiveVerifier v;
        v.n = j.at("n").get<int>();
        v.p1 = j.at("p1").get<int>();
        v.k = j.at("k").get<int>();
        v.p2 = j.at("p2").get<int>();
        v.q = j.at("q").get<int>();
        v.index_register = j.at("index_register").get<std::vector<int>>();
        v.output_qubit = j.at("output_qubit").get<int>();
        for (const auto& cj : j.at("circuits")) {
            v.circuits.push_back(circuit_from_json(cj));
        }
        v.validate();
        return v;
    }
    if (type == "nonadaptive") {
        NonAdaptiveVerifier v;
        v.n = j.at("n").get<int>();
        v.p1 = j.at("p1").get<int>();
        v.k = j.at("k").get<int>();
        v.p2 = j.at("p2").get<int>();
        v.q = j.at("q").get<int>();
        v.index_registers = j.at("index_registers").get<std::vector<std::vector<int>>>();
        v.output_qubit = j.at("output_qubit").get<int>();
        const auto& circuits = j.at("circuits");
        if (circuits.size() != 2) {
            throw std::invalid_argument(
                "nonadaptive verifier: expected [prep, main] circuits");
        }
        v.prep_circuit = circuit_from_json(circuits[0]);
        v.main_circuit = circuit_from_json(circuits[1]);
        v.validate();
        return v;
    }
    throw std::invalid_argument("verifier: unknown type " + type);
}

Json hamiltonian_to_json(const LocalHamiltonian& h) {
    Json terms = Json::array();
    for (const auto& t : h.terms) {
        terms.push_back(
            Json{{"support", t.support}, {"matrix", matrix_to_json(t.matrix)}});
    }
    Json out{{"num_qubits", h.num_qubits},
             {"locality", h.locality},
             {"terms", std::move(terms)}};
    if (h.weights) {
        out["weights"] = *h.weights;
    }
    return out;
}

LocalHamiltonian hamiltonian_from_json(const Json& j) {
    LocalHamiltonian h;
    h.num_qubits = j.at("num_qubits").get<int>();
    h.locality = j.at("locality").get<int>();
    for (const auto& tj : j.at("terms")) {
        h.terms.push_back(
            {tj.at("support").get<std::vector<int>>(), matrix_from_json(tj.at("matrix"))});
    }
    if (j.contains("weights")) {
        h.weights = j.at("weights").get<std::vector<double>>();
    }
    h.validate();
    return h;
}

Json marginal_spec_to_json(const MarginalSpec& m) {
    Json targets = Json::array();
    for (const auto& t : m.targets) {
        targets.push_back(density_to_json(t));
    }
    return Json{{"subsets", m.subsets}, {"targets", std::move(targets)}};
}

MarginalSpec marginal_spec_from_json(const Json& j) {
    MarginalSpec m;
    m.subsets = j.at("subsets").get<std::vector<std::vector<int>>>();
    for (const auto& tj : j.at("targets")) {
        m.targets.push_back(density_from_json(tj));
    }
    return m;
}

}  // namespace qpcp
