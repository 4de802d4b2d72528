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

#include "qpcp/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "qpcp/fixtures.hpp"
#include "qpcp/protocols.hpp"
#include "qpcp/states.hpp"

namespace qpcp {

namespace {

Json load_object(const Json& config, const std::string& path_key,
                 const std::string& inline_key) {
    if (config.contains(inline_key)) {
        return config.at(inline_key);
    }
    if (config.contains(path_key)) {
        return load_json_file(config.at(path_key).get<std::string>());
    }
    throw std::invalid_argument("config: expected \"" + path_key + "\" or \"" +
                                inline_key + "\"");
}

std::string x_or_zeros(const Json& config, int n) {
    if (config.contains("x")) {
        return config.at("x").get<std::string>();
    }
    return std::string(static_cast<std::size_t>(n), '0');
}

std::uint64_t seed_of(const Json& config) {
    return config.value("seed", std::uint64_t{0});
}

Json branch_to_json(const BranchOutcome& b) {
    return Json{{"path", b.path}, {"accept", b.accept}, {"probability", b.probability}};
}

ExperimentResult run_verify(const Json& config) {
    const VerifierVariant v = verifier_from_json(load_object(config, "spec", "verifier"));
    const DensityMatrix xi = proof_from_json(load_object(config, "proof", "proof_inline"));
    const int n = std::visit([](const auto& vv) { return vv.n; }, v);
    const std::string x = x_or_zeros(config, n);
    const std::string mode = config.value("mode", "exact");

    ExperimentResult res;
    Json outputs;
    Json checks;
    if (mode == "exact") {
        const auto branches = branch_distribution(v, x, xi);
        double total = 0.0;
        double accept = 0.0;
        Json table = Json::array();
        for (const auto& b : branches) {
            total += b.probability;
            if (b.accept) {
                accept += b.probability;
            }
            table.push_back(branch_to_json(b));
        }
        outputs["accept_probability"] = accept;
        outputs["branches"] = std::move(table);
        checks["branch_probability_total"] = total;
        res.ok = std::abs(total - 1.0) <= 1e-9;
        checks["branch_total_ok"] = res.ok;
    } else if (mode == "shots") {
        const std::uint64_t shots = config.value("shots", std::uint64_t{1000});
        RngStream rng(seed_of(config));
        std::uint64_t accepts = 0;
        std::map<std::vector<int>, std::uint64_t> histogram;
        for (std::uint64_t i = 0; i < shots; ++i) {
            auto stream = rng.child("run/" + std::to_string(i));
            const auto [path, accept] = sample_run(v, x, xi, stream);
            accepts += accept ? 1 : 0;
            histogram[path.indices] += 1;
        }
        outputs["shots"] = shots;
        outputs["accept_frequency"] =
            static_cast<double>(accepts) / static_cast<double>(shots);
        Json hist = Json::array();
        for (const auto& [path, count] : histogram) {
            hist.push_back(Json{{"path", path}, {"count", count}});
        }
        outputs["path_histogram"] = std::move(hist);
        res.ok = true;
    } else {
        throw std::invalid_argument("verify: mode must be exact or shots");
    }
    res.body = Json{{"config", config}, {"outputs", std::move(outputs)},
                    {"checks", std::move(checks)}};
    return res;
}

ExperimentResult run_reduce(const Json& config) {
    const VerifierVariant vv = verifier_from_json(load_object(config, "spec", "verifier"));
    if (!std::holds_alternative<AdaptiveVerifier>(vv)) {
        throw std::invalid_argument("reduce: expects an adaptive verifier spec");
    }
    const auto& v = std::get<AdaptiveVerifier>(vv);
    const std::string x = x_or_zeros(config, v.n);
    const std::string mode = config.value("mode", "exact");
    RngStream rng(seed_of(config));

    ExperimentResult res;
    Json outputs;
    Json parameters;
    Json checks;

    const LocalHamiltonian exact = exact_hamiltonian(v, x);
    LocalHamiltonian produced = exact;

    if (mode == "exact") {
        double residual = 0.0;
        auto check_rng = rng.child("residual-check");
        for (int i = 0; i < 20; ++i) {
            auto stream = check_rng.child(std::to_string(i));
            const DensityMatrix xi =
                random_density_matrix(v.proof_qubits(), stream, (i % 4 == 0) ? 0 : 1);
            const double p = accept_probability_exact(v, x, xi);
            const double energy = trace_product(exact.assemble(), xi.matrix).real();
            residual = std::max(residual, std::abs(p - (1.0 - energy)));
        }
        checks["energy_identity_residual"] = residual;
        res.ok = residual <= 1e-9;
        checks["energy_identity_ok"] = res.ok;
    } else if (mode == "learn") {
        const double eps = config.value("eps", 0.1);
        const double delta = config.value("delta", 0.2);
        LearnSchedule schedule;
        if (config.contains("round")) {
            const int eta = config.at("round").get<int>();
            schedule = learn_schedule_rounded(v, eta, delta);
            produced = learn_hamiltonian_rounded(v, x, eta, delta, rng.child("learn"));
            parameters["eta"] = eta;
            parameters["equivalent_eps"] = rounded_equivalent_eps(v, eta);
        } else {
            schedule = learn_schedule(v, eps, delta);
            produced = learn_hamiltonian(v, x, eps, delta, rng.child("learn"));
            parameters["eps"] = eps;
        }
        parameters["delta"] = delta;
        parameters["omega"] = schedule.omega;
        parameters["gamma"] = schedule.wordwise_gamma;
        parameters["eps_prime"] = schedule.eps_prime;
        parameters["delta_prime"] = schedule.delta_prime;
        parameters["shots_per_part"] = schedule.shots_per_part;
        if (config.value("compare", false)) {
            Json per_term = Json::array();
            for (std::size_t i = 0; i < exact.terms.size(); ++i) {
                per_term.push_back(
                    operator_norm(exact.terms[i].matrix - produced.terms[i].matrix));
            }
            const double assembled_error =
                operator_norm(exact.assemble() - produced.assemble());
            checks["per_term_error"] = std::move(per_term);
            checks["assembled_error"] = assembled_error;
            checks["within_eps"] = assembled_error <= eps;
        }
        res.ok = true;
    } else {
        throw std::invalid_argument("reduce: mode must be exact or learn");
    }

    outputs["hamiltonian"] = hamiltonian_to_json(produced);
    if (config.contains("out")) {
        save_json_file(config.at("out").get<std::string>(),
                       hamiltonian_to_json(produced));
    }
    res.body = Json{{"config", config},
                    {"parameters", std::move(parameters)},
                    {"outputs", std::move(outputs)},
                    {"checks", std::move(checks)}};
    return res;
}

ExperimentResult run_ham(const Json& config) {
    const std::string op = config.at("op").get<std::string>();
    const LocalHamiltonian h =
        hamiltonian_from_json(load_object(config, "in", "hamiltonian"));
    RngStream rng(seed_of(config));

    ExperimentResult res;
    Json outputs;
    Json checks;

    if (op == "ground") {
        outputs["ground_energy"] = ground_energy(h);
        res.ok = true;
    } else if (op == "smooth") {
        const LocalHamiltonian out = smooth(h, h.locality);
        const double scale = static_cast<double>(std::uint64_t{1} << (h.locality + 3));
        const double residual =
            max_abs_entry_diff(ComplexMatrix(scale * out.assemble()), h.assemble());
        outputs["hamiltonian"] = hamiltonian_to_json(out);
        checks["reassembly_residual"] = residual;
        res.ok = residual <= 1e-10;
        checks["reassembly_ok"] = res.ok;
    } else if (op == "kitaev") {
        const NonAdaptiveVerifier kv = kitaev_verifier(h);
        double residual = 0.0;
        auto check_rng = rng.child("kitaev-check");
        for (int i = 0; i < 3; ++i) {
            auto stream = check_rng.child(std::to_string(i));
            const DensityMatrix xi = random_density_matrix(h.num_qubits, stream, 1);
            const double p = accept_probability_exact(kv, "", xi);
            const double energy = trace_product(h.assemble(), xi.matrix).real();
            residual = std::max(residual, std::abs(p - (1.0 - energy)));
        }
        outputs["verifier"] = verifier_to_json(VerifierVariant{kv});
        checks["acceptance_identity_residual"] = residual;
        res.ok = residual <= 1e-9;
        checks["acceptance_identity_ok"] = res.ok;
    } else if (op == "sample") {
        const std::uint64_t l = config.value("l", std::uint64_t{100});
        auto stream = rng.child("sample");
        const LocalHamiltonian out = sample_terms(h, l, stream);
        const double scale = static_cast<double>(std::uint64_t{1} << (h.locality + 3));
        const ComplexMatrix g = scale * out.assemble();
        outputs["hamiltonian"] = hamiltonian_to_json(out);
        outputs["deviation_norm"] = operator_norm(h.assemble() - g);
        res.ok = true;
    } else {
        throw std::invalid_argument("ham: op must be smooth|kitaev|sample|ground");
    }

    if (config.contains("out") && outputs.contains("hamiltonian")) {
        save_json_file(config.at("out").get<std::string>(), outputs["hamiltonian"]);
    }
    res.body = Json{{"config", config}, {"outputs", std::move(outputs)},
                    {"checks", std::move(checks)}};
    return res;
}

ExperimentResult run_cldm(const Json& config) {
    const std::string op = config.at("op").get<std::string>();
    RngStream rng(seed_of(config));

    ExperimentResult res;
    Json outputs;
    Json parameters;

    if (op == "cover") {
        const int nq = config.value("num_qubits", 1);
        const double eps = config.at("eps").get<double>();
        const std::uint64_t patience = config.value("patience", std::uint64_t{10000});
        auto stream = rng.child("cover");
        const CoveringSet cs = build_covering_set(nq, eps, stream, patience);
        outputs["member_count"] = cs.members.size();
        outputs["audit_samples"] = cs.audit.samples;
        outputs["audit_max_min_distance"] = cs.audit.max_min_distance;
        outputs["audit_ok"] = cs.audit.ok;
        if (config.value("dump_members", false)) {
            Json members = Json::array();
            for (const auto& m : cs.members) {
                members.push_back(density_to_json(m));
            }
            outputs["members"] = std::move(members);
        }
        res.ok = cs.audit.ok;
    } else if (op == "estimate" || op == "decide") {
        const DensityMatrix rho = proof_from_json(load_object(config, "state", "state_inline"));
        const MarginalSpec spec =
            marginal_spec_from_json(load_object(config, "spec", "marginals"));
        spec.validate(rho.num_qubits);
        const double eps = config.at("eps").get<double>();
        const double delta = config.at("delta").get<double>();
        const bool psd_project = config.value("psd_project", false);

        int max_q = 1;
        for (const auto& s : spec.subsets) {
            max_q = std::max(max_q, static_cast<int>(s.size()));
        }
        const auto counts = cldm_copy_count(spec.subsets.size(), max_q, rho.num_qubits,
                                            eps, delta);
        parameters["protocol_l"] = counts.l;
        parameters["protocol_definetti_k"] = counts.definetti_k;
        if (config.contains("l_override") || config.contains("k_override")) {
            parameters["guarantees_voided"] = true;
        }

        auto stream = rng.child("estimate");
        const auto estimates =
            estimate_marginals(rho, spec.subsets, eps, delta, stream, psd_project);
        Json dists = Json::array();
        for (std::size_t i = 0; i < estimates.size(); ++i) {
            dists.push_back(
                trace_norm_hermitian(estimates[i].matrix - spec.targets[i].matrix));
        }
        outputs["trace_norm_distances"] = dists;
        if (config.value("dump_estimates", op == "estimate")) {
            Json ests = Json::array();
            for (const auto& e : estimates) {
                ests.push_back(density_to_json(e));
            }
            outputs["estimates"] = std::move(ests);
        }
        if (op == "decide") {
            const double alpha = config.value("alpha", 0.0);
            const auto decision = cldm_decide(estimates, spec.targets, alpha, eps);
            outputs["accept"] = decision.accept;
            outputs["max_trace_norm"] = decision.max_trace_norm;
            outputs["threshold"] = decision.threshold;
        }
        res.ok = true;
    } else {
        throw std::invalid_argument("cldm: op must be estimate|decide|cover");
    }

    res.body = Json{{"config", config},
                    {"parameters", std::move(parameters)},
                    {"outputs", std::move(outputs)},
                    {"checks", Json::object()}};
    return res;
}

ExperimentResult run_protocol(const Json& config) {
    const std::string op = config.at("op").get<std::string>();
    RngStream rng(seed_of(config));

    ExperimentResult res;
    Json outputs;
    Json parameters;

    if (op == "nonadaptive") {
        const VerifierVariant vv =
            verifier_from_json(load_object(config, "spec", "verifier"));
        const auto& v = std::get<AdaptiveVerifier>(vv);
        const std::string x = x_or_zeros(config, v.n);
        const double c = config.at("c").get<double>();
        const double s = config.at("s").get<double>();
        const std::uint64_t cap = config.value("cap", std::uint64_t{64});
        auto sim = nonadaptive_simulation(v, x, c, s, rng.child("pipeline"), cap);
        parameters = Json{{"epsilon", sim.epsilon},
                          {"delta", sim.delta},
                          {"eta", sim.eta},
                          {"gamma_prime", sim.gamma_prime},
                          {"full_repetitions", sim.full_repetitions},
                          {"executed_repetitions", sim.executed_repetitions},
                          {"reported_query_count", sim.reported_query_count},
                          {"threshold", sim.threshold},
                          {"smoothed_yes_energy", sim.smoothed_yes_energy},
                          {"smoothed_no_energy", sim.smoothed_no_energy},
                          {"truncated_confidence", sim.truncated_confidence},
                          {"unadjusted",
                           Json{{"threshold_fraction", sim.stated_threshold_fraction}}}};
        outputs["learned"] = hamiltonian_to_json(sim.learned);
        outputs["smoothed"] = hamiltonian_to_json(sim.smoothed);
        outputs["composite"] = Json{{"base", verifier_to_json(sim.composite.base)},
                                    {"repetitions", sim.composite.repetitions},
                                    {"threshold", sim.composite.threshold}};
        if (config.contains("proof_yes")) {
            const DensityMatrix proof =
                proof_from_json(load_json_file(config.at("proof_yes").get<std::string>()));
            outputs["measured_completeness"] =
                accept_probability_exact(sim.composite, x, proof);
        }
        if (config.contains("proof_no")) {
            const DensityMatrix proof =
                proof_from_json(load_json_file(config.at("proof_no").get<std::string>()));
            outputs["measured_soundness"] =
                accept_probability_exact(sim.composite, x, proof);
        }
        res.ok = true;
    } else if (op == "qcma") {
        const VerifierVariant vv =
            verifier_from_json(load_object(config, "spec", "verifier"));
        const auto& v = std::get<AdaptiveVerifier>(vv);
        const std::string x = x_or_zeros(config, v.n);
        const double c = config.at("c").get<double>();
        const double s = config.at("s").get<double>();
        const auto rep = qcma_pipeline(v, x, c, s, exact_lh_oracle, rng.child("pipeline"));
        parameters = Json{{"epsilon", rep.epsilon},
                          {"eta", rep.eta},
                          {"delta", rep.delta},
                          {"a", rep.a},
                          {"b", rep.b},
                          {"gamma_prime", rep.gamma_prime},
                          {"unadjusted", Json{{"a", rep.stated_a}, {"b", rep.stated_b}}}};
        outputs["accept"] = rep.accept;
        outputs["learned"] = hamiltonian_to_json(rep.learned);
        outputs["ground_energy"] = ground_energy(rep.learned);
        res.ok = true;
    } else if (op == "ksep") {
        const LocalHamiltonian h =
            hamiltonian_from_json(load_object(config, "hamiltonian", "hamiltonian_inline"));
        const Json wj = load_object(config, "witness", "witness_inline");
        const int k = wj.at("k").get<int>();
        const double a = wj.at("a").get<double>();
        const double b = wj.at("b").get<double>();
        std::vector<std::vector<DensityMatrix>> classical;
        for (const auto& row : wj.at("classical")) {
            std::vector<DensityMatrix> r;
            for (const auto& dj : row) {
                r.push_back(density_from_json(dj));
            }
            classical.push_back(std::move(r));
        }
        const DensityMatrix quantum = density_from_json(wj.at("quantum"));
        const auto rep = k_separable_check(h, k, a, b, classical, quantum, rng.child("ksep"));
        parameters = Json{{"a_prime", rep.a_prime},
                          {"b_prime", rep.b_prime},
                          {"alpha", rep.alpha},
                          {"beta", rep.beta},
                          {"delta", rep.delta},
                          {"cldm_eps", rep.cldm_eps},
                          {"unadjusted", Json{{"delta", rep.stated_delta}}}};
        outputs = Json{{"accept", rep.accept},
                       {"check1", rep.check1},
                       {"check2", rep.check2},
                       {"check3", rep.check3},
                       {"witness_energy", rep.witness_energy},
                       {"register_consistent", rep.register_consistent},
                       {"failure_reason", rep.failure_reason}};
        res.ok = true;
    } else if (op == "strongred") {
        const VerifierVariant vv =
            verifier_from_json(load_object(config, "spec", "verifier"));
        const auto& v = std::get<NonAdaptiveVerifier>(vv);
        const std::string x = x_or_zeros(config, v.n);
        const DensityMatrix xi =
            proof_from_json(load_object(config, "proof", "proof_inline"));
        const int l = config.value("l", 5);
        auto stream = rng.child("strongred");
        const auto rep = strong_error_reduction(v, x, xi, l, stream);
        parameters = Json{{"l", l}};
        outputs = Json{{"majority_accept_probability", rep.majority_accept_probability},
                       {"accept", rep.accept},
                       {"proof_restoration_distance", rep.proof_restoration_distance},
                       {"leaf_count", rep.leaf_count}};
        res.ok = true;
    } else {
        throw std::invalid_argument("protocol: op must be nonadaptive|qcma|ksep|strongred");
    }

    res.body = Json{{"config", config},
                    {"parameters", std::move(parameters)},
                    {"outputs", std::move(outputs)},
                    {"checks", Json::object()}};
    return res;
}

ExperimentResult run_fixture(const Json& config) {
    const std::string family = config.at("family").get<std::string>();
    const std::uint64_t seed = seed_of(config);
    const auto bundle = generate_fixture(family, seed);

    ExperimentResult res;
    Json outputs;
    Json files = Json::object();
    for (const auto& [name, content] : bundle.files) {
        files[name] = content;
    }
    outputs["files"] = std::move(files);
    if (config.contains("out_dir")) {
        const std::string dir = config.at("out_dir").get<std::string>();
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        for (const auto& [name, content] : bundle.files) {
            save_json_file(dir + "/" + name, content);
        }
        outputs["out_dir"] = dir;
    }
    res.ok = true;
    res.body = Json{{"config", config}, {"outputs", std::move(outputs)},
                    {"checks", Json::object()}};
    return res;
}

}  // namespace

ExperimentResult run_config(const Json& config) {
    const std::string pipeline = config.at("pipeline").get<std::string>();
    if (pipeline == "verify") {
        return run_verify(config);
    }
    if (pipeline == "reduce") {
        return run_reduce(config);
    }
    if (pipeline == "ham") {
        return run_ham(config);
    }
    if (pipeline == "cldm") {
        return run_cldm(config);
    }
    if (pipeline == "protocol") {
        return run_protocol(config);
    }
    if (pipeline == "fixture") {
        return run_fixture(config);
    }
    throw std::invalid_argument("unknown pipeline: " + pipeline);
}

Json make_report(const Json& body, double wall_seconds) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    return Json{{"meta", Json{{"timestamp_ms", ms}, {"wall_time_s", wall_seconds}}},
                {"body", body}};
}

ExperimentResult run_experiment(const std::string& config_path,
                                const std::string& out_path) {
    Json config = load_json_file(config_path);
    if (config.contains("body")) {
        config = config.at("body").at("config");
    }
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult res = run_config(config);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out_path.empty()) {
        save_json_file(out_path, make_report(res.body, wall));
    }
    return res;
}

}  // namespace qpcp
