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

#include "qpcp/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpcp {

namespace {

std::vector<std::vector<int>> combinations(int n, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> current(q);
    for (int i = 0; i < q; ++i) {
        current[i] = i;
    }
    for (;;) {
        out.push_back(current);
        int i = q - 1;
        while (i >= 0 && current[i] == n - q + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++current[i];
        for (int j = i + 1; j < q; ++j) {
            current[j] = current[j - 1] + 1;
        }
    }
    return out;
}

Circuit input_gates(const std::string& x) {
    Circuit c;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == '1') {
            c.push_back(named_gate("X", {static_cast<int>(i)}));
        }
    }
    return c;
}

/// Run one path-projected pipeline on a sandwich basis state: proof qubits in
/// `support` carry the bits of `pattern` (most significant bit first), all
/// other qubits start in |0>. Returns the state after the output-reject
/// projection, unnormalized.
Eigen::VectorXcd sandwich_pipeline(const AdaptiveVerifier& v, const std::string& x,
                                   const std::vector<int>& path,
                                   const std::vector<int>& support,
                                   std::uint64_t pattern) {
    const int nq = v.total_qubits();
    const int s = static_cast<int>(support.size());
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << nq);
    std::uint64_t index = 0;
    for (int j = 0; j < s; ++j) {
        if ((pattern >> (s - 1 - j)) & 1u) {
            index |= std::uint64_t{1} << (nq - 1 - (v.proof_offset() + support[j]));
        }
    }
    psi(static_cast<Eigen::Index>(index)) = 1.0;

    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == '1') {
            sim::apply_plain(psi, nq, named_gate("X", {static_cast<int>(i)}));
        }
    }
    for (int t = 0; t < v.q; ++t) {
        sim::apply_circuit(psi, nq, v.circuits[t]);
        sim::project_register(psi, nq, v.index_register,
                              static_cast<std::uint64_t>(path[t]));
    }
    sim::apply_circuit(psi, nq, v.circuits[v.q]);
    sim::project_bit(psi, nq, v.output_qubit, 0);
    return psi;
}

PlainGate reflection_gate(const std::vector<int>& reg, std::uint64_t value) {
    const Eigen::Index dim = Eigen::Index{1} << reg.size();
    ComplexMatrix m = -ComplexMatrix::Identity(dim, dim);
    m(static_cast<Eigen::Index>(value), static_cast<Eigen::Index>(value)) = 1.0;
    return PlainGate{reg, std::move(m), ""};
}

}  // namespace

std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        result = result * (n - i) / (i + 1);
    }
    return result;
}

std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

LocalHamiltonian exact_hamiltonian(const AdaptiveVerifier& v, const std::string& x) {
    v.validate();
    const int kp2 = v.proof_qubits();
    const Eigen::Index sub = Eigen::Index{1} << v.q;

    LocalHamiltonian h;
    h.num_qubits = kp2;
    h.locality = v.q;

    for (const auto& support : combinations(kp2, v.q)) {
        ComplexMatrix term = ComplexMatrix::Zero(sub, sub);
        std::vector<int> path = support;
        do {
            std::vector<Eigen::VectorXcd> projected(static_cast<std::size_t>(sub));
            for (Eigen::Index b = 0; b < sub; ++b) {
                projected[static_cast<std::size_t>(b)] = sandwich_pipeline(
                    v, x, path, support, static_cast<std::uint64_t>(b));
            }
            for (Eigen::Index a = 0; a < sub; ++a) {
                for (Eigen::Index b = 0; b < sub; ++b) {
                    term(a, b) += projected[static_cast<std::size_t>(a)].dot(
                        projected[static_cast<std::size_t>(b)]);
                }
            }
        } while (std::next_permutation(path.begin(), path.end()));
        h.terms.push_back({support, std::move(term)});
    }
    h.validate();
    return h;
}

std::vector<std::pair<int, PauliWord>> projector_decomposition(const std::string& q_state) {
    const int len = static_cast<int>(q_state.size());
    for (char c : q_state) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("projector_decomposition: bitstring expected");
        }
    }
    std::vector<std::pair<int, PauliWord>> out;
    const std::uint64_t count = std::uint64_t{1} << len;
    for (std::uint64_t j = 0; j < count; ++j) {
        std::string letters(static_cast<std::size_t>(len), 'I');
        int sign = 1;
        for (int i = 0; i < len; ++i) {
            const bool use_z = (j >> (len - 1 - i)) & 1u;
            if (use_z) {
                letters[static_cast<std::size_t>(i)] = 'Z';
            } else if (q_state[static_cast<std::size_t>(i)] == '1') {
                sign = -sign;  // identity factor carries (1 - 2 b_i)
            }
        }
        out.emplace_back(sign, PauliWord{std::move(letters)});
    }
    return out;
}

std::uint64_t hadamard_shots(double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("hadamard_shots: eps, delta must be in (0,1)");
    }
    return static_cast<std::uint64_t>(std::ceil(std::log(4.0 / delta) / (2.0 * eps * eps)));
}

namespace {

/// Exact quadrature probabilities of the interferometer: Pr[ancilla reads 0]
/// for the real and imaginary settings.
std::pair<double, double> interferometer_probabilities(int num_qubits, const Circuit& w,
                                                       const Circuit& u_psi,
                                                       const Circuit& u_phi) {
    const int nq = num_qubits + 1;  // ancilla appended as least significant qubit
    const int anc = num_qubits;
    auto build = [&](bool imag) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << nq);
        psi(0) = 1.0;
        sim::apply_plain(psi, nq, named_gate("H", {anc}));
        // psi-branch prepared where the ancilla is |0>.
        sim::apply_plain(psi, nq, named_gate("X", {anc}));
        sim::apply_circuit(psi, nq, u_psi, anc);
        sim::apply_plain(psi, nq, named_gate("X", {anc}));
        sim::apply_circuit(psi, nq, u_phi, anc);
        sim::apply_circuit(psi, nq, w, anc);
        if (imag) {
            PlainGate sdg;
            sdg.targets = {anc};
            sdg.matrix = named_gate_matrix("S").adjoint();
            sim::apply_plain(psi, nq, sdg);
        }
        sim::apply_plain(psi, nq, named_gate("H", {anc}));
        return sim::bit_probability(psi, nq, anc, 0);
    };
    return {build(false), build(true)};
}

Complex sample_quadratures(double p_re, double p_im, std::uint64_t shots, RngStream& rng) {
    const auto part = [&](double p, const char* label) {
        auto stream = rng.child(label);
        const std::uint64_t zeros = stream.binomial(shots, p);
        return 2.0 * static_cast<double>(zeros) / static_cast<double>(shots) - 1.0;
    };
    return Complex(part(p_re, "re"), part(p_im, "im"));
}

}  // namespace

Complex hadamard_exact(int num_qubits, const Circuit& w, const Circuit& u_psi,
                       const Circuit& u_phi) {
    const auto [p_re, p_im] = interferometer_probabilities(num_qubits, w, u_psi, u_phi);
    return Complex(2.0 * p_re - 1.0, 2.0 * p_im - 1.0);
}

Complex hadamard_test(int num_qubits, const Circuit& w, const Circuit& u_psi,
                      const Circuit& u_phi, double eps, double delta, RngStream& rng) {
    check_qubit_cap(num_qubits + 1, "hadamard_test");
    const auto [p_re, p_im] = interferometer_probabilities(num_qubits, w, u_psi, u_phi);
    return sample_quadratures(p_re, p_im, hadamard_shots(eps, delta), rng);
}

Circuit circuit_adjoint(const Circuit& c) {
    Circuit out;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        if (std::holds_alternative<PlainGate>(*it)) {
            const auto& g = std::get<PlainGate>(*it);
            PlainGate adj;
            adj.targets = g.targets;
            adj.matrix = g.matrix.adjoint();
            if (!g.name.empty() && is_hermitian(g.matrix, 1e-12)) {
                adj.name = g.name;
            }
            out.push_back(std::move(adj));
        } else {
            const auto& g = std::get<SelectGate>(*it);
            SelectGate adj;
            adj.controls = g.controls;
            for (const auto& cs : g.cases) {
                adj.cases.push_back({cs.value, cs.targets, cs.matrix.adjoint(), ""});
            }
            out.push_back(std::move(adj));
        }
    }
    return out;
}

ComplexMatrix circuit_matrix(const Circuit& c, int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    ComplexMatrix m(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        psi(col) = 1.0;
        sim::apply_circuit(psi, num_qubits, c);
        m.col(col) = psi;
    }
    return m;
}

std::uint64_t decomposition_size(int q) {
    return std::uint64_t{1} << (2 * q + 1);
}

std::uint64_t wordwise_gamma_formula(int q, int k_p2) {
    std::uint64_t g = std::uint64_t{1} << (q + 1);
    for (int i = 0; i < q; ++i) {
        g *= static_cast<std::uint64_t>(k_p2);
    }
    return g;
}

UnitaryDecomposition unitary_decomposition(const AdaptiveVerifier& v, const std::string& x,
                                           const std::vector<int>& path) {
    v.validate();
    if (static_cast<int>(path.size()) != v.q) {
        throw std::invalid_argument("unitary_decomposition: path must have q entries");
    }

    const Circuit xprep = input_gates(x);
    std::vector<Circuit> forward(v.circuits.size());
    std::vector<Circuit> backward(v.circuits.size());
    for (std::size_t i = 0; i < v.circuits.size(); ++i) {
        forward[i] = v.circuits[i];
        backward[i] = circuit_adjoint(v.circuits[i]);
    }
    forward[0].insert(forward[0].begin(), xprep.begin(), xprep.end());
    backward[0].insert(backward[0].end(), xprep.begin(), xprep.end());

    const bool has_register = !v.index_register.empty();
    const int slots = 2 * v.q + 1;

    UnitaryDecomposition d;
    d.normalizer = decomposition_size(v.q);
    d.wordwise_gamma = wordwise_gamma_formula(v.q, v.proof_qubits());

    for (std::uint64_t choice = 0; choice < d.normalizer; ++choice) {
        // Slot order along the gate sequence: q forward index slots, the
        // output slot, then q backward index slots.
        auto slot_on = [&](int s) { return ((choice >> s) & 1u) != 0; };
        Circuit c;
        auto append = [&c](const Circuit& part) {
            c.insert(c.end(), part.begin(), part.end());
        };
        append(forward[0]);
        for (int t = 0; t < v.q; ++t) {
            if (slot_on(t) && has_register) {
                c.push_back(reflection_gate(v.index_register,
                                            static_cast<std::uint64_t>(path[t])));
            }
            if (t + 1 <= v.q) {
                append(forward[static_cast<std::size_t>(t) + 1]);
            }
        }
        if (slot_on(v.q)) {
            c.push_back(named_gate("Z", {v.output_qubit}));
        }
        for (int t = v.q; t >= 1; --t) {
            append(backward[static_cast<std::size_t>(t)]);
            if (slot_on(slots - t) && has_register) {
                c.push_back(reflection_gate(v.index_register,
                                            static_cast<std::uint64_t>(path[t - 1])));
            }
        }
        append(backward[0]);
        d.terms.push_back({1, std::move(c)});
    }
    return d;
}

LearnSchedule learn_schedule(const AdaptiveVerifier& v, double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("learn_schedule: eps, delta must be in (0,1)");
    }
    LearnSchedule s;
    s.omega = binomial_coefficient(static_cast<std::uint64_t>(v.proof_qubits()),
                                   static_cast<std::uint64_t>(v.q));
    s.wordwise_gamma = wordwise_gamma_formula(v.q, v.proof_qubits());
    const double fact = static_cast<double>(factorial(static_cast<std::uint64_t>(v.q)));
    s.eps_prime = eps / (static_cast<double>(s.omega) *
                         static_cast<double>(std::uint64_t{1} << (v.q + 4)) * fact);
    s.delta_prime =
        delta / (static_cast<double>(s.omega) * fact *
                 std::pow(4.0, v.q + 1) * static_cast<double>(s.wordwise_gamma));
    s.shots_per_part = hadamard_shots(s.eps_prime, s.delta_prime);
    return s;
}

LearnSchedule learn_schedule_rounded(const AdaptiveVerifier& v, int eta, double delta) {
    if (eta < 1 || eta > 40) {
        throw std::invalid_argument("learn_schedule_rounded: eta out of range");
    }
    LearnSchedule s;
    s.omega = binomial_coefficient(static_cast<std::uint64_t>(v.proof_qubits()),
                                   static_cast<std::uint64_t>(v.q));
    s.wordwise_gamma = wordwise_gamma_formula(v.q, v.proof_qubits());
    const double fact = static_cast<double>(factorial(static_cast<std::uint64_t>(v.q)));
    s.eps_prime = 2.0 / (std::pow(2.0, eta) + 1.0);
    s.delta_prime =
        delta / (static_cast<double>(s.omega) * fact *
                 std::pow(4.0, v.q + 1) * static_cast<double>(s.wordwise_gamma));
    s.shots_per_part = hadamard_shots(s.eps_prime, s.delta_prime);
    s.eta = eta;
    return s;
}

double round_to_grid(double value, int eta) {
    // 2^(eta-1) + 1 evenly spaced points in [-1, 1]; ties round toward -1.
    const double cells = std::pow(2.0, eta - 1);
    const double step = 2.0 / cells;
    double t = std::ceil((value + 1.0) / step - 0.5);
    t = std::clamp(t, 0.0, cells);
    return -1.0 + t * step;
}

double rounded_equivalent_eps(const AdaptiveVerifier& v, int eta) {
    const std::uint64_t omega =
        binomial_coefficient(static_cast<std::uint64_t>(v.proof_qubits()),
                             static_cast<std::uint64_t>(v.q));
    const double fact = static_cast<double>(factorial(static_cast<std::uint64_t>(v.q)));
    return static_cast<double>(omega) *
           static_cast<double>(std::uint64_t{1} << (v.q + 4)) * fact * 4.0 /
           (std::pow(2.0, eta) + 1.0);
}

std::uint64_t pipeline_gamma_prime(int q, int k, int p2) {
    return static_cast<std::uint64_t>(q + 1) * 2u * static_cast<std::uint64_t>(k) *
           static_cast<std::uint64_t>(p2);
}

int pipeline_eta(int q, std::uint64_t gamma_prime, double eps) {
    const double g = static_cast<double>(gamma_prime);
    const double arg = 4.0 * g * (g + 1.0) / eps - 1.0;
    return static_cast<int>(std::ceil(static_cast<double>(q) * std::log2(arg)));
}

namespace {

LocalHamiltonian learn_impl(const AdaptiveVerifier& v, const std::string& x,
                            const LearnSchedule& schedule, RngStream& rng) {
    v.validate();
    const int kp2 = v.proof_qubits();
    const int nq = v.total_qubits();
    const Eigen::Index sub = Eigen::Index{1} << v.q;

    LocalHamiltonian h;
    h.num_qubits = kp2;
    h.locality = v.q;

    for (const auto& support : combinations(kp2, v.q)) {
        std::string slabel = "S=";
        for (int qb : support) {
            slabel += std::to_string(qb) + ",";
        }
        ComplexMatrix term = ComplexMatrix::Zero(sub, sub);

        std::vector<int> path = support;
        int perm_id = 0;
        do {
            const auto decomp = unitary_decomposition(v, x, path);
            for (Eigen::Index a = 0; a < sub; ++a) {
                for (Eigen::Index b = 0; b < sub; ++b) {
                    Circuit u_psi;
                    Circuit u_phi;
                    for (int j = 0; j < v.q; ++j) {
                        const int qubit = v.proof_offset() + support[j];
                        if ((a >> (v.q - 1 - j)) & 1) {
                            u_psi.push_back(named_gate("X", {qubit}));
                        }
                        if ((b >> (v.q - 1 - j)) & 1) {
                            u_phi.push_back(named_gate("X", {qubit}));
                        }
                    }
                    Complex acc = 0.0;
                    for (std::size_t j = 0; j < decomp.terms.size(); ++j) {
                        auto stream = rng.child(
                            slabel + "/perm=" + std::to_string(perm_id) +
                            "/a=" + std::to_string(a) + "/b=" + std::to_string(b) +
                            "/j=" + std::to_string(j));
                        const auto [p_re, p_im] = interferometer_probabilities(
                            nq, decomp.terms[j].circuit, u_psi, u_phi);
                        Complex z = sample_quadratures(p_re, p_im,
                                                       schedule.shots_per_part, stream);
                        if (schedule.eta > 0) {
                            z = Complex(round_to_grid(z.real(), schedule.eta),
                                        round_to_grid(z.imag(), schedule.eta));
                        }
                        acc += static_cast<double>(decomp.terms[j].coefficient) * z;
                    }
                    term(a, b) += acc / static_cast<double>(decomp.normalizer);
                }
            }
            ++perm_id;
        } while (std::next_permutation(path.begin(), path.end()));

        term = 0.5 * (term + term.adjoint());
        const double lambda = min_eigenvalue(term);
        if (lambda < 0.0) {
            term -= lambda * ComplexMatrix::Identity(sub, sub);
        }
        h.terms.push_back({support, std::move(term)});
    }

    const double norm = operator_norm(h.assemble());
    const double normalizer = std::max(norm, 1.0);
    for (auto& t : h.terms) {
        t.matrix /= normalizer;
    }
    h.validate();
    return h;
}

}  // namespace

LocalHamiltonian learn_hamiltonian(const AdaptiveVerifier& v, const std::string& x,
                                   double eps, double delta, RngStream rng) {
    const auto schedule = learn_schedule(v, eps, delta);
    return learn_impl(v, x, schedule, rng);
}

LocalHamiltonian learn_hamiltonian_rounded(const AdaptiveVerifier& v, const std::string& x,
                                           int eta, double delta, RngStream rng) {
    const auto schedule = learn_schedule_rounded(v, eta, delta);
    return learn_impl(v, x, schedule, rng);
}

}  // namespace qpcp
