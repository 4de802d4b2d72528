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
#include <utility>
#include <variant>
#include <vector>

#include "qpcp/circuit_sim.hpp"
#include "qpcp/linalg.hpp"
#include "qpcp/rng.hpp"

namespace qpcp {

// Verifiers that query q qubits of a quantum proof, possibly adaptively via
// intermediate index measurements. The global register order is
// [input A (n) | ancilla B (p1) | proof C (k * p2)]; a proof index encodes a
// (prover j, position l) pair as j * p2 + l (0-based, row-major). The
// hardcoded input x is realized by X gates on register A applied to an
// all-zeros initial state at the start of the first circuit.

struct QueryPath {
    std::vector<int> indices;  // ordered, distinct proof-qubit indices
    double probability = 0.0;
};

/// One fully resolved measurement record of a verifier run: the ordered index
/// tuple, the output-qubit outcome, and the branch probability.
struct BranchOutcome {
    std::vector<int> path;
    bool accept = false;
    double probability = 0.0;
};

struct AdaptiveVerifier {
    int n = 0;   // input bits
    int p1 = 0;  // ancilla qubits
    int k = 1;   // provers
    int p2 = 0;  // qubits per proof
    int q = 1;   // query count
    std::vector<int> index_register;  // contiguous subset of B, size ceil(log2(k*p2))
    int output_qubit = 0;             // in A or B
    std::vector<Circuit> circuits;    // q+1 circuits

    int proof_qubits() const { return k * p2; }
    int total_qubits() const { return n + p1 + proof_qubits(); }
    int proof_offset() const { return n + p1; }

    /// Structural checks: register geometry, gate unitarity, and the static
    /// proof-locality bound (circuit t may touch at most t-1 proof qubits per
    /// select branch, the final circuit at most q).
    void validate() const;
};

/// Same register layout, but all q indices are fixed by a single PVM measured
/// after a preparation circuit that never touches the proof. The q index
/// blocks are read jointly; the main circuit then runs and the output qubit
/// is measured.
struct NonAdaptiveVerifier {
    int n = 0;
    int p1 = 0;
    int k = 1;
    int p2 = 0;
    int q = 1;
    std::vector<std::vector<int>> index_registers;  // q disjoint blocks in B
    int output_qubit = 0;
    Circuit prep_circuit;
    Circuit main_circuit;

    int proof_qubits() const { return k * p2; }
    int total_qubits() const { return n + p1 + proof_qubits(); }
    int proof_offset() const { return n + p1; }

    void validate() const;
};

using VerifierVariant = std::variant<AdaptiveVerifier, NonAdaptiveVerifier>;

/// Number of index-register qubits for a proof of the given length.
int index_register_size(int proof_qubits);

/// Full-space matrix of the rejection operator conditioned on an ordered
/// query path: the product of the path-projected circuit chain, sandwiching
/// the reject projector of the output qubit. PSD with operator norm <= 1.
ComplexMatrix path_operator(const AdaptiveVerifier& v, const std::string& x,
                            const std::vector<int>& path);

/// Exact joint distribution over (ordered index tuple, output bit), computed
/// by exhaustive branching over every intermediate measurement outcome.
/// Branches below probability 1e-12 are pruned; a duplicate or out-of-range
/// index outcome above that threshold throws (the verifier construction is
/// assumed to give such outcomes amplitude zero).
std::vector<BranchOutcome> branch_distribution(const AdaptiveVerifier& v,
                                               const std::string& x,
                                               const DensityMatrix& xi);
std::vector<BranchOutcome> branch_distribution(const NonAdaptiveVerifier& v,
                                               const std::string& x,
                                               const DensityMatrix& xi);
std::vector<BranchOutcome> branch_distribution(const VerifierVariant& v,
                                               const std::string& x,
                                               const DensityMatrix& xi);

double accept_probability_exact(const AdaptiveVerifier& v, const std::string& x,
                                const DensityMatrix& xi);
double accept_probability_exact(const NonAdaptiveVerifier& v, const std::string& x,
                                const DensityMatrix& xi);
double accept_probability_exact(const VerifierVariant& v, const std::string& x,
                                const DensityMatrix& xi);

/// Marginal distribution over ordered index tuples (summing out the output).
std::vector<QueryPath> path_distribution(const VerifierVariant& v, const std::string& x,
                                         const DensityMatrix& xi);

/// One Monte-Carlo run. The returned QueryPath carries the realized path's
/// probability (product of the sampled conditional outcome probabilities).
std::pair<QueryPath, bool> sample_run(const AdaptiveVerifier& v, const std::string& x,
                                      const DensityMatrix& xi, RngStream& rng);
std::pair<QueryPath, bool> sample_run(const NonAdaptiveVerifier& v, const std::string& x,
                                      const DensityMatrix& xi, RngStream& rng);
std::pair<QueryPath, bool> sample_run(const VerifierVariant& v, const std::string& x,
                                      const DensityMatrix& xi, RngStream& rng);

/// R-fold parallel repetition with a fractional acceptance threshold. The
/// composite expects the product proof xi^(x)R; acceptance on a product proof
/// is the binomial tail Pr[#accepts >= threshold * R] over the per-copy
/// acceptance probability.
struct RepeatedVerifier {
    VerifierVariant base;
    std::uint64_t repetitions = 1;
    double threshold = 0.5;

    std::uint64_t query_count() const;
    std::uint64_t accept_count_threshold() const;
};

RepeatedVerifier parallel_repeat(VerifierVariant v, std::uint64_t repetitions,
                                 double threshold);

double accept_probability_exact(const RepeatedVerifier& rv, const std::string& x,
                                const DensityMatrix& per_copy_proof);
bool sample_run(const RepeatedVerifier& rv, const std::string& x,
                const DensityMatrix& per_copy_proof, RngStream& rng);

/// Repetitions sufficient to push both error sides below 2^-t when accepting
/// at the (c+s)/2 fraction: ceil(2 t ln2 / (c-s)^2).
std::uint64_t repetition_count(double c, double s, double t);

/// Pr[Binomial(n, p) >= threshold] via stable log-pmf summation.
double binomial_tail_geq(std::uint64_t n, double p, std::uint64_t threshold);

}  // namespace qpcp
