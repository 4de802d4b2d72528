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

#include "qpcp/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qpcp/states.hpp"

namespace qpcp {

void LocalHamiltonian::validate() const {
    if (num_qubits < 1) {
        throw std::invalid_argument("LocalHamiltonian: num_qubits must be >= 1");
    }
    if (locality < 1 || locality > num_qubits) {
        throw std::invalid_argument("LocalHamiltonian: bad locality");
    }
    for (const auto& t : terms) {
        if (t.support.empty() || static_cast<int>(t.support.size()) > locality) {
            throw std::invalid_argument("LocalHamiltonian: term support size out of bounds");
        }
        for (std::size_t i = 0; i < t.support.size(); ++i) {
            if (t.support[i] < 0 || t.support[i] >= num_qubits) {
                throw std::invalid_argument("LocalHamiltonian: support index out of range");
            }
            if (i > 0 && t.support[i] <= t.support[i - 1]) {
                throw std::invalid_argument("LocalHamiltonian: support not sorted ascending");
            }
        }
        const Eigen::Index dim = Eigen::Index{1} << t.support.size();
        if (t.matrix.rows() != dim || t.matrix.cols() != dim) {
            throw std::invalid_argument("LocalHamiltonian: term dimension mismatch");
        }
        if (!is_hermitian(t.matrix, 1e-9)) {
            throw std::invalid_argument("LocalHamiltonian: term not Hermitian within 1e-9");
        }
    }
    if (weights) {
        if (weights->size() != terms.size()) {
            throw std::invalid_argument("LocalHamiltonian: weight count mismatch");
        }
        double sum = 0.0;
        for (double w : *weights) {
            if (w < -1e-12) {
                throw std::invalid_argument("LocalHamiltonian: negative weight");
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("LocalHamiltonian: weights do not sum to 1");
        }
    }
}

void LocalHamiltonian::validate_psd(double tol) const {
    for (const auto& t : terms) {
        if (min_eigenvalue(t.matrix) < -tol) {
            throw std::invalid_argument("LocalHamiltonian: term not PSD");
        }
    }
}

void LocalHamiltonian::validate_normalized(double tol) const {
    if (operator_norm(assemble()) > 1.0 + tol) {
        throw std::invalid_argument("LocalHamiltonian: assembled operator norm exceeds 1");
    }
}

ComplexMatrix embed_on_support(const ComplexMatrix& m, const std::vector<int>& support,
                               int num_qubits) {
    check_qubit_cap(num_qubits, "embed_on_support");
    const int s = static_cast<int>(support.size());
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    const std::uint64_t sub = std::uint64_t{1} << s;
    const int rest = num_qubits - s;

    std::vector<std::uint64_t> sup_mask(s);
    for (int j = 0; j < s; ++j) {
        sup_mask[j] = std::uint64_t{1} << (num_qubits - 1 - support[j]);
    }
    std::vector<std::uint64_t> rest_mask;
    std::uint64_t in_support = 0;
    for (auto msk : sup_mask) {
        in_support |= msk;
    }
    for (int b = num_qubits - 1; b >= 0; --b) {
        const std::uint64_t msk = std::uint64_t{1} << b;
        if ((msk & in_support) == 0) {
            rest_mask.push_back(msk);
        }
    }

    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    const std::uint64_t rest_count = std::uint64_t{1} << rest;
    for (std::uint64_t off = 0; off < rest_count; ++off) {
        std::uint64_t base = 0;
        for (int b = 0; b < rest; ++b) {
            if ((off >> b) & 1u) {
                base |= rest_mask[static_cast<std::size_t>(b)];
            }
        }
        for (std::uint64_t r = 0; r < sub; ++r) {
            std::uint64_t row = base;
            for (int j = 0; j < s; ++j) {
                if ((r >> (s - 1 - j)) & 1u) {
                    row |= sup_mask[j];
                }
            }
            for (std::uint64_t c = 0; c < sub; ++c) {
                std::uint64_t col = base;
                for (int j = 0; j < s; ++j) {
                    if ((c >> (s - 1 - j)) & 1u) {
                        col |= sup_mask[j];
                    }
                }
                out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return out;
}

ComplexMatrix LocalHamiltonian::embed_term(std::size_t i) const {
    return embed_on_support(terms[i].matrix, terms[i].support, num_qubits);
}

ComplexMatrix LocalHamiltonian::assemble() const {
    check_qubit_cap(num_qubits, "LocalHamiltonian::assemble");
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double w = weights ? (*weights)[i] : 1.0;
        out += w * embed_term(i);
    }
    return out;
}

double ground_energy(const LocalHamiltonian& h) {
    h.validate();
    return min_eigenvalue(h.assemble());
}

std::int64_t smooth_redistribution_count(std::size_t m, double alpha) {
    return static_cast<std::int64_t>(std::floor(2.0 * static_cast<double>(m) * alpha - 1.0));
}

namespace {

// Extends a term matrix from its support to a superset support.
ComplexMatrix extend_term(const ComplexMatrix& m, const std::vector<int>& support,
                          const std::vector<int>& new_support) {
    std::vector<int> local;
    for (int qubit : support) {
        const auto it = std::find(new_support.begin(), new_support.end(), qubit);
        local.push_back(static_cast<int>(it - new_support.begin()));
    }
    return embed_on_support(m, local, static_cast<int>(new_support.size()));
}

std::vector<int> support_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

}  // namespace

LocalHamiltonian smooth(const LocalHamiltonian& h, int q) {
    h.validate();
    h.validate_psd();
    h.validate_normalized();
    for (const auto& t : h.terms) {
        if (static_cast<int>(t.support.size()) > q) {
            throw std::invalid_argument("smooth: a term exceeds the declared locality");
        }
    }

    const std::size_t m = h.terms.size();
    const double scale = 1.0 / static_cast<double>(std::uint64_t{1} << (q + 3));

    struct Piece {
        std::vector<int> support;
        ComplexMatrix matrix;
        double alpha;
    };
    std::vector<Piece> pieces(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double w = h.weights ? (*h.weights)[i] : 1.0;
        pieces[i].support = h.terms[i].support;
        pieces[i].matrix = scale * w * h.terms[i].matrix;
        pieces[i].alpha = operator_norm(pieces[i].matrix);
    }

    const double low = 1.0 / (2.0 * static_cast<double>(m));
    const double high = 1.0 / static_cast<double>(m);

    std::vector<std::size_t> light;  // ascending index order
    std::vector<std::size_t> heavy;
    for (std::size_t i = 0; i < m; ++i) {
        (pieces[i].alpha <= low ? light : heavy).push_back(i);
    }
    std::stable_sort(heavy.begin(), heavy.end(), [&](std::size_t a, std::size_t b) {
        return pieces[a].alpha > pieces[b].alpha;
    });

    std::size_t light_cursor = 0;
    for (std::size_t j : heavy) {
        if (pieces[j].alpha <= high) {
            continue;
        }
        const std::int64_t t_j = smooth_redistribution_count(m, pieces[j].alpha);
        if (light_cursor + static_cast<std::size_t>(t_j) > light.size()) {
            throw std::runtime_error("smooth: redistribution exhausted the light terms");
        }
        // Unit-norm direction of the heavy term; each shifted slice carries
        // norm exactly 1/(2m), leaving the remainder in [1/(2m), 1/m].
        const ComplexMatrix slice = pieces[j].matrix * (low / pieces[j].alpha);
        for (std::int64_t c = 0; c < t_j; ++c) {
            Piece& dst = pieces[light[light_cursor++]];
            const auto merged = support_union(dst.support, pieces[j].support);
            ComplexMatrix sum = extend_term(dst.matrix, dst.support, merged) +
                                extend_term(slice, pieces[j].support, merged);
            dst.support = merged;
            dst.matrix = std::move(sum);
        }
        pieces[j].matrix *= 1.0 - static_cast<double>(t_j) * low / pieces[j].alpha;
    }

    LocalHamiltonian out;
    out.num_qubits = h.num_qubits;
    out.locality = std::min(2 * q, h.num_qubits);
    out.weights = std::vector<double>(m, 1.0 / static_cast<double>(m));
    for (auto& p : pieces) {
        out.terms.push_back(
            {std::move(p.support), ComplexMatrix(static_cast<double>(m) * p.matrix)});
    }
    out.validate();
    return out;
}

NonAdaptiveVerifier kitaev_verifier(const LocalHamiltonian& h) {
    h.validate();
    h.validate_psd();
    if (!h.weights) {
        throw std::invalid_argument("kitaev_verifier: weights required");
    }
    for (const auto& t : h.terms) {
        if (operator_norm(t.matrix) > 1.0 + 1e-9) {
            throw std::invalid_argument("kitaev_verifier: a term exceeds norm 1");
        }
    }

    // Merge terms with identical support (their convex combination is again
    // PSD with norm <= 1), dropping zero-weight entries.
    std::map<std::vector<int>, std::pair<double, ComplexMatrix>> merged;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        const double w = (*h.weights)[i];
        if (w <= 0.0) {
            continue;
        }
        auto it = merged.find(h.terms[i].support);
        if (it == merged.end()) {
            merged.emplace(h.terms[i].support,
                           std::make_pair(w, ComplexMatrix(w * h.terms[i].matrix)));
        } else {
            it->second.first += w;
            it->second.second += w * h.terms[i].matrix;
        }
    }
    if (merged.empty()) {
        throw std::invalid_argument("kitaev_verifier: all weights vanish");
    }

    int qk = 1;
    for (const auto& [support, entry] : merged) {
        qk = std::max(qk, static_cast<int>(support.size()));
    }

    // Pad every support to size qk (tensoring with identity on the lowest
    // qubits outside the support), re-merging any collisions this creates.
    for (bool changed = true; changed;) {
        changed = false;
        std::map<std::vector<int>, std::pair<double, ComplexMatrix>> next;
        for (auto& [support, entry] : merged) {
            std::vector<int> padded = support;
            for (int qubit = 0; static_cast<int>(padded.size()) < qk; ++qubit) {
                if (std::find(padded.begin(), padded.end(), qubit) == padded.end()) {
                    padded.push_back(qubit);
                }
            }
            std::sort(padded.begin(), padded.end());
            ComplexMatrix mat = (padded == support)
                                    ? entry.second
                                    : extend_term(entry.second, support, padded);
            auto it = next.find(padded);
            if (it == next.end()) {
                next.emplace(padded, std::make_pair(entry.first, std::move(mat)));
            } else {
                it->second.first += entry.first;
                it->second.second += mat;
                changed = true;
            }
        }
        merged = std::move(next);
    }

    const int r = index_register_size(h.num_qubits);
    const int block_qubits = qk * r;

    NonAdaptiveVerifier v;
    v.n = 0;
    v.p1 = block_qubits + 1;
    v.k = 1;
    v.p2 = h.num_qubits;
    v.q = qk;
    v.output_qubit = block_qubits;
    for (int t = 0; t < qk; ++t) {
        std::vector<int> block;
        for (int b = 0; b < r; ++b) {
            block.push_back(t * r + b);
        }
        v.index_registers.push_back(std::move(block));
    }

    std::vector<int> all_blocks;
    for (int i = 0; i < block_qubits; ++i) {
        all_blocks.push_back(i);
    }

    auto encode_support = [&](const std::vector<int>& support) {
        std::uint64_t value = 0;
        for (int qubit : support) {
            value = (value << r) | static_cast<std::uint64_t>(qubit);
        }
        return value;
    };

    // Eigenvalue-controlled rotation of the fresh output ancilla: the
    // acceptance probability on eigenstate |lambda> is exactly 1 - lambda.
    auto term_unitary = [&](const ComplexMatrix& normalized_term) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ComplexMatrix(
            0.5 * (normalized_term + normalized_term.adjoint())));
        const Eigen::Index dim = normalized_term.rows();
        ComplexMatrix w = ComplexMatrix::Zero(2 * dim, 2 * dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double lam = std::clamp(es.eigenvalues()(j), 0.0, 1.0);
            const double sl = std::sqrt(lam);
            const double cl = std::sqrt(1.0 - lam);
            ComplexMatrix rot(2, 2);
            rot << sl, -cl, cl, sl;
            const Eigen::VectorXcd vec = es.eigenvectors().col(j);
            w += kron(ComplexMatrix(vec * vec.adjoint()), rot);
        }
        return w;
    };

    if (block_qubits == 0) {
        // Single proof qubit: one merged term, no index ancillas needed.
        const auto& [support, entry] = *merged.begin();
        PlainGate g;
        g.targets = {v.proof_offset() + support[0], v.output_qubit};
        g.matrix = term_unitary(entry.second / entry.first);
        v.main_circuit.push_back(g);
        v.validate();
        return v;
    }

    Eigen::VectorXcd prep = Eigen::VectorXcd::Zero(Eigen::Index{1} << block_qubits);
    SelectGate select;
    select.controls = all_blocks;
    for (const auto& [support, entry] : merged) {
        const std::uint64_t value = encode_support(support);
        prep(static_cast<Eigen::Index>(value)) = std::sqrt(entry.first);
        SelectCase c;
        c.value = value;
        for (int qubit : support) {
            c.targets.push_back(v.proof_offset() + qubit);
        }
        c.targets.push_back(v.output_qubit);
        c.matrix = term_unitary(entry.second / entry.first);
        select.cases.push_back(std::move(c));
    }
    prep /= prep.norm();

    PlainGate prep_gate;
    prep_gate.targets = all_blocks;
    prep_gate.matrix = state_prep_unitary(prep);
    v.prep_circuit.push_back(prep_gate);
    v.main_circuit.push_back(select);
    v.validate();
    return v;
}

LocalHamiltonian sample_terms(const LocalHamiltonian& h, std::uint64_t l, RngStream& rng) {
    h.validate();
    h.validate_psd();
    if (l == 0) {
        throw std::invalid_argument("sample_terms: l must be >= 1");
    }
    if (h.weights) {
        const double uniform = 1.0 / static_cast<double>(h.terms.size());
        for (double w : *h.weights) {
            if (std::abs(w - uniform) > 1e-9) {
                throw std::invalid_argument("sample_terms: weights must be uniform");
            }
        }
    }

    LocalHamiltonian g;
    g.num_qubits = h.num_qubits;
    g.locality = h.locality;
    const double inv_l = 1.0 / static_cast<double>(l);
    for (std::uint64_t i = 0; i < l; ++i) {
        const std::size_t pick = rng.uniform_below(h.terms.size());
        g.terms.push_back({h.terms[pick].support,
                           ComplexMatrix(inv_l * h.terms[pick].matrix)});
    }
    return smooth(g, h.locality);
}

std::uint64_t sample_count(double gamma, std::uint64_t n, double delta) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("sample_count: gamma must be in (0, 1]");
    }
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw std::invalid_argument("sample_count: delta must be in (0, 1]");
    }
    const double value = 128.0 / (gamma * gamma) *
                         (static_cast<double>(n) * std::log(2.0) + std::log(1.0 / delta));
    return static_cast<std::uint64_t>(std::ceil(value));
}

WeightedErrorReport weighted_error_check(const LocalHamiltonian& h,
                                         const LocalHamiltonian& h_tilde, double eps0,
                                         double eps1) {
    h.validate();
    h_tilde.validate();
    WeightedErrorReport rep;

    const std::size_t m = h.terms.size();
    if (h_tilde.terms.size() != m || h.num_qubits != h_tilde.num_qubits) {
        rep.preconditions_ok = false;
        rep.precondition_message = "term lists do not match";
        return rep;
    }
    const double uniform = 1.0 / static_cast<double>(m);
    auto weight = [&](const LocalHamiltonian& ham, std::size_t i) {
        return ham.weights ? (*ham.weights)[i] : uniform;
    };
    for (std::size_t i = 0; i < m; ++i) {
        if (h.terms[i].support != h_tilde.terms[i].support) {
            rep.preconditions_ok = false;
            rep.precondition_message = "supports differ at term " + std::to_string(i);
            return rep;
        }
        if (std::abs(weight(h, i) - weight(h_tilde, i)) > eps0 + 1e-12) {
            rep.preconditions_ok = false;
            rep.precondition_message = "weight deviation exceeds eps0 at term " +
                                       std::to_string(i);
            return rep;
        }
        if (operator_norm(h.terms[i].matrix - h_tilde.terms[i].matrix) > eps1 + 1e-12) {
            rep.preconditions_ok = false;
            rep.precondition_message = "term deviation exceeds eps1 at term " +
                                       std::to_string(i);
            return rep;
        }
    }

    double weight_sum = 0.0;
    double max_norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        weight_sum += weight(h_tilde, i);
        max_norm = std::max(max_norm, operator_norm(h_tilde.terms[i].matrix));
    }
    const double normalizer = std::max(1.0, max_norm);

    const Eigen::Index dim = Eigen::Index{1} << h.num_qubits;
    ComplexMatrix diff = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < m; ++i) {
        const double p_hat = weight(h_tilde, i) / weight_sum;
        diff += weight(h, i) * h.embed_term(i) -
                (p_hat / normalizer) * h_tilde.embed_term(i);
    }

    const double md = static_cast<double>(m);
    rep.measured_norm = operator_norm(diff);
    rep.bound = std::min(8.0 * md * md * eps0, 6.0 * eps1);
    rep.chain_bound = 2.0 * eps1 + eps1 * eps1 + 4.0 * md * md * eps0;
    rep.within_bound = rep.measured_norm <= rep.bound + 1e-12;
    return rep;
}

}  // namespace qpcp
