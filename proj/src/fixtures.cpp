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

#include "qpcp/fixtures.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "qpcp/states.hpp"

namespace qpcp {

ComplexMatrix ry_matrix(double theta) {
    ComplexMatrix m(2, 2);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    m << c, -s, s, c;
    return m;
}

namespace {

/// Shared register geometry: index register right after A, output qubit last.
struct Layout {
    int n, k, p2, r, p1;
    int idx_begin;
    int output;
    std::vector<int> index_register;
};

Layout layout_for(int n, int k, int p2) {
    Layout l{};
    l.n = n;
    l.k = k;
    l.p2 = p2;
    l.r = index_register_size(k * p2);
    l.p1 = l.r + 1;
    l.idx_begin = n;
    l.output = n + l.r;
    for (int i = 0; i < l.r; ++i) {
        l.index_register.push_back(n + i);
    }
    return l;
}

AdaptiveVerifier skeleton(const Layout& l, int q) {
    AdaptiveVerifier v;
    v.n = l.n;
    v.p1 = l.p1;
    v.k = l.k;
    v.p2 = l.p2;
    v.q = q;
    v.index_register = l.index_register;
    v.output_qubit = l.output;
    v.circuits.assign(static_cast<std::size_t>(q) + 1, Circuit{});
    return v;
}

PlainGate dense_gate(std::vector<int> targets, ComplexMatrix m) {
    return PlainGate{std::move(targets), std::move(m), ""};
}

/// Random unit vector supported on the first `valid` basis states of a
/// 2^r-dimensional register.
Eigen::VectorXcd random_valid_index_state(int r, int valid, RngStream& rng) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << r);
    for (int i = 0; i < valid; ++i) {
        v(i) = Complex(rng.normal(), rng.normal());
    }
    v /= v.norm();
    return v;
}

/// Unitary shifting the valid index block by `stride` (diagonal-free there),
/// identity on the padding block.
ComplexMatrix shift_reprep(int r, int valid, int stride, RngStream& rng) {
    const Eigen::Index dim = Eigen::Index{1} << r;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int v = 0; v < valid; ++v) {
        m((v + stride) % valid, v) = std::polar(1.0, 2.0 * M_PI * rng.next_double());
    }
    for (Eigen::Index v = valid; v < dim; ++v) {
        m(v, v) = 1.0;
    }
    return m;
}

}  // namespace

AdaptiveVerifier make_reject_always(int n, int k, int p2) {
    auto v = skeleton(layout_for(n, k, p2), 1);
    v.validate();
    return v;
}

AdaptiveVerifier make_accept_always(int n, int k, int p2) {
    auto v = skeleton(layout_for(n, k, p2), 1);
    v.circuits[1].push_back(named_gate("X", {v.output_qubit}));
    v.validate();
    return v;
}

AdaptiveVerifier make_random_verifier(int q, int k, int p2, int n, RngStream& rng) {
    if (q < 1 || q > 2) {
        throw std::invalid_argument("make_random_verifier: q must be 1 or 2");
    }
    const Layout l = layout_for(n, k, p2);
    const int kp2 = k * p2;
    auto v = skeleton(l, q);
    const int proof0 = v.proof_offset();

    // Workspace texture and input dependence.
    for (int a = 0; a < n; ++a) {
        if (rng.bernoulli(0.5)) {
            v.circuits[0].push_back(named_gate("CNOT", {a, l.output}));
        }
        v.circuits[0].push_back(dense_gate({a}, random_unitary(2, rng)));
    }
    v.circuits[0].push_back(dense_gate({l.output}, random_unitary(2, rng)));

    // Index distribution, confined to valid index values.
    if (l.r > 0) {
        v.circuits[0].push_back(dense_gate(
            l.index_register,
            state_prep_unitary(random_valid_index_state(l.r, kp2, rng))));
    }

    const int stride = (q == 2) ? 1 + static_cast<int>(rng.uniform_below(
                                          static_cast<std::uint64_t>(kp2 - 1)))
                                : 0;

    if (q == 1) {
        SelectGate sel;
        sel.controls = l.index_register;
        for (int i = 0; i < kp2; ++i) {
            sel.cases.push_back({static_cast<std::uint64_t>(i),
                                 {proof0 + i, l.output},
                                 random_unitary(4, rng),
                                 ""});
        }
        if (l.r > 0) {
            v.circuits[1].push_back(std::move(sel));
        } else {
            v.circuits[1].push_back(
                dense_gate({proof0, l.output}, random_unitary(4, rng)));
        }
        v.circuits[1].push_back(dense_gate({l.output}, random_unitary(2, rng)));
        v.validate();
        return v;
    }

    // q == 2: couple the first addressed qubit, then shift the register so
    // the second outcome never repeats the first.
    {
        SelectGate sel;
        sel.controls = l.index_register;
        for (int i = 0; i < kp2; ++i) {
            sel.cases.push_back({static_cast<std::uint64_t>(i),
                                 {proof0 + i, l.output},
                                 random_unitary(4, rng),
                                 ""});
        }
        v.circuits[1].push_back(std::move(sel));
        v.circuits[1].push_back(
            dense_gate(l.index_register, shift_reprep(l.r, kp2, stride, rng)));
    }
    {
        SelectGate sel;
        sel.controls = l.index_register;
        for (int i2 = 0; i2 < kp2; ++i2) {
            const int i1 = (i2 - stride % kp2 + kp2) % kp2;
            sel.cases.push_back({static_cast<std::uint64_t>(i2),
                                 {proof0 + i1, proof0 + i2, l.output},
                                 random_unitary(8, rng),
                                 ""});
        }
        v.circuits[2].push_back(std::move(sel));
        v.circuits[2].push_back(dense_gate({l.output}, random_unitary(2, rng)));
    }
    v.validate();
    return v;
}

AdaptiveVerifier make_grid_fixture(int variant) {
    const Layout l = layout_for(0, 1, 2);
    auto v = skeleton(l, 1);
    const int proof0 = v.proof_offset();
    const int idx = l.index_register[0];

    auto check_select = [&]() {
        SelectGate sel;
        sel.controls = l.index_register;
        sel.cases.push_back({0, {proof0 + 0, l.output}, named_gate_matrix("CNOT"), "CNOT"});
        sel.cases.push_back({1, {proof0 + 1, l.output}, named_gate_matrix("CNOT"), "CNOT"});
        return sel;
    };

    switch (variant) {
        case 0:  // reject-always
            break;
        case 1:  // accept-always
            v.circuits[1].push_back(named_gate("X", {v.output_qubit}));
            break;
        case 2:  // uniform index, copy the addressed qubit into the output
            v.circuits[0].push_back(named_gate("H", {idx}));
            v.circuits[1].push_back(check_select());
            break;
        case 3:  // deterministic second index, copy check plus output flip
            v.circuits[0].push_back(named_gate("X", {idx}));
            v.circuits[1].push_back(check_select());
            v.circuits[1].push_back(named_gate("X", {v.output_qubit}));
            break;
        case 4: {  // uniform index with a phase twist on the addressed qubit
            v.circuits[0].push_back(named_gate("H", {idx}));
            SelectGate sel;
            sel.controls = l.index_register;
            sel.cases.push_back({0, {proof0 + 0}, named_gate_matrix("S"), "S"});
            sel.cases.push_back({1, {proof0 + 1}, named_gate_matrix("Z"), "Z"});
            v.circuits[1].push_back(std::move(sel));
            v.circuits[1].push_back(check_select());
            break;
        }
        default:
            throw std::invalid_argument("make_grid_fixture: variant must be 0..4");
    }
    v.validate();
    return v;
}

NonAdaptiveVerifier make_strongred_fixture(bool yes) {
    NonAdaptiveVerifier v;
    v.n = 0;
    v.p1 = 2;
    v.k = 1;
    v.p2 = 2;
    v.q = 1;
    v.index_registers = {{0}};
    v.output_qubit = 1;
    v.prep_circuit.push_back(named_gate("H", {0}));
    if (yes) {
        SelectGate sel;
        sel.controls = {0};
        sel.cases.push_back({0, {2, 1}, named_gate_matrix("CNOT"), "CNOT"});
        sel.cases.push_back({1, {3, 1}, named_gate_matrix("CNOT"), "CNOT"});
        v.main_circuit.push_back(std::move(sel));
    } else {
        // Fixed acceptance probability 0.3 regardless of the proof.
        const double theta = 2.0 * std::asin(std::sqrt(0.3));
        v.main_circuit.push_back(PlainGate{{1}, ry_matrix(theta), ""});
    }
    v.validate();
    return v;
}

DensityMatrix strongred_yes_proof(double eps) {
    Eigen::VectorXcd one(2);
    one << std::sqrt(eps), std::sqrt(1.0 - eps);
    Eigen::VectorXcd both = kron(ComplexMatrix(one), ComplexMatrix(one));
    return DensityMatrix::from_pure(StateVector::make(2, both));
}

MarginalSpec ghz_marginals(int n) {
    const DensityMatrix rho = DensityMatrix::from_pure(ghz_state(n));
    MarginalSpec spec;
    std::vector<std::vector<int>> subsets;
    if (n == 3) {
        subsets = {{0, 1}, {1, 2}, {0, 2}};
    } else {
        for (int i = 0; i + 1 < n; ++i) {
            subsets.push_back({i, i + 1});
        }
    }
    for (const auto& s : subsets) {
        spec.subsets.push_back(s);
        spec.targets.push_back(partial_trace(rho, std::set<int>(s.begin(), s.end())));
    }
    return spec;
}

KsepFixture make_product_ksep() {
    KsepFixture f;
    f.h.num_qubits = 2;
    f.h.locality = 1;
    ComplexMatrix excited(2, 2);
    excited << 0, 0, 0, 1;
    f.h.terms.push_back({{0}, excited});
    f.h.terms.push_back({{1}, excited});
    f.h.weights = std::vector<double>{0.5, 0.5};
    f.k = 2;
    f.a = 0.1;
    f.b = 0.9;

    ComplexMatrix ground(2, 2);
    ground << 1, 0, 0, 0;
    const DensityMatrix ground_dm = DensityMatrix::make(1, ground);
    const DensityMatrix scalar = DensityMatrix::unchecked(0, ComplexMatrix::Ones(1, 1));
    f.classical_witness = {{ground_dm, scalar}, {scalar, ground_dm}};

    Eigen::VectorXcd zz = Eigen::VectorXcd::Zero(4);
    zz(0) = 1.0;
    f.quantum_witness = DensityMatrix::from_pure(StateVector::make(2, zz));
    return f;
}

FixtureBundle generate_fixture(const std::string& family, std::uint64_t seed) {
    RngStream rng(seed);
    FixtureBundle b;
    if (family == "reject-always") {
        b.files["verifier.json"] =
            verifier_to_json(VerifierVariant{make_reject_always(0, 1, 2)});
    } else if (family == "accept-always") {
        b.files["verifier.json"] =
            verifier_to_json(VerifierVariant{make_accept_always(0, 1, 2)});
    } else if (family == "random-q1") {
        auto stream = rng.child("random-q1");
        b.files["verifier.json"] =
            verifier_to_json(VerifierVariant{make_random_verifier(1, 1, 2, 1, stream)});
    } else if (family == "random-q2") {
        auto stream = rng.child("random-q2");
        b.files["verifier.json"] =
            verifier_to_json(VerifierVariant{make_random_verifier(2, 1, 3, 1, stream)});
    } else if (family == "ghz-cldm") {
        const auto spec = ghz_marginals(3);
        b.files["state.json"] = density_to_json(DensityMatrix::from_pure(ghz_state(3)));
        b.files["marginals.json"] = marginal_spec_to_json(spec);
    } else if (family == "product-ksep") {
        const auto f = make_product_ksep();
        b.files["hamiltonian.json"] = hamiltonian_to_json(f.h);
        Json classical = Json::array();
        for (const auto& row : f.classical_witness) {
            Json jrow = Json::array();
            for (const auto& d : row) {
                jrow.push_back(density_to_json(d));
            }
            classical.push_back(std::move(jrow));
        }
        b.files["witness.json"] = Json{{"k", f.k},
                                       {"a", f.a},
                                       {"b", f.b},
                                       {"classical", std::move(classical)},
                                       {"quantum", density_to_json(f.quantum_witness)}};
    } else {
        throw std::invalid_argument("generate_fixture: unknown family " + family);
    }
    return b;
}

}  // namespace qpcp
