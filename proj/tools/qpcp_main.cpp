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

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "qpcp/experiment.hpp"

namespace {

// Exit codes: 0 ok, 1 check failure, 2 usage, 3 I/O.
int finish(const qpcp::Json& config, const std::string& report_path) {
    const auto start = std::chrono::steady_clock::now();
    const qpcp::ExperimentResult res = qpcp::run_config(config);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << res.body.dump(2) << "\n";
    if (!report_path.empty()) {
        qpcp::save_json_file(report_path, qpcp::make_report(res.body, wall));
    }
    return res.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale laboratory for locally-checked quantum proofs and their "
                 "induced local Hamiltonians"};
    app.require_subcommand(1);

    std::string spec, proof, proof_yes, proof_no, witness, hamiltonian, state,
        marginals, out, report, config_path, x_bits, family;
    std::uint64_t seed = 0;
    std::uint64_t shots = 1000;
    std::uint64_t l_count = 100;
    std::uint64_t cap = 64;
    int eta = 0;
    int rounds = 5;
    int num_qubits = 1;
    double eps = 0.1;
    double delta = 0.1;
    double alpha = 0.0;
    double c_param = 2.0 / 3.0;
    double s_param = 1.0 / 3.0;
    bool exact = false;
    bool learn = false;
    bool compare = false;
    bool psd_project = false;

    auto* verify = app.add_subcommand("verify", "acceptance behavior of a verifier");
    verify->add_option("--spec", spec, "verifier spec JSON")->required();
    verify->add_option("--proof", proof, "proof state JSON")->required();
    verify->add_option("--x", x_bits, "input bits (defaults to all zeros)");
    verify->add_flag("--exact", exact, "exhaustive branching");
    verify->add_option("--shots", shots, "Monte-Carlo runs");
    verify->add_option("--seed", seed, "rng seed");
    verify->add_option("--report", report, "report file");

    auto* reduce = app.add_subcommand("reduce", "induced local Hamiltonian");
    reduce->add_option("--spec", spec, "verifier spec JSON")->required();
    reduce->add_option("--x", x_bits, "input bits");
    reduce->add_flag("--exact", exact, "exact construction");
    reduce->add_flag("--learn", learn, "interferometric learning");
    reduce->add_option("--eps", eps, "target accuracy");
    reduce->add_option("--delta", delta, "failure budget");
    reduce->add_option("--round", eta, "round estimates to an eta-bit grid");
    reduce->add_flag("--compare", compare, "report error against the exact Hamiltonian");
    reduce->add_option("--seed", seed, "rng seed");
    reduce->add_option("--out", out, "write the Hamiltonian JSON here");
    reduce->add_option("--report", report, "report file");

    auto* ham = app.add_subcommand("ham", "Hamiltonian transforms");
    std::string ham_op;
    ham->add_option("op", ham_op, "smooth|kitaev|sample|ground")->required();
    ham->add_option("--in", hamiltonian, "Hamiltonian JSON")->required();
    ham->add_option("--l", l_count, "sample count");
    ham->add_option("--seed", seed, "rng seed");
    ham->add_option("--out", out, "output file");
    ham->add_option("--report", report, "report file");

    auto* cldm = app.add_subcommand("cldm", "marginal estimation and consistency");
    std::string cldm_op;
    cldm->add_option("op", cldm_op, "estimate|decide|cover")->required();
    cldm->add_option("--state", state, "global state JSON");
    cldm->add_option("--spec", marginals, "marginal spec JSON");
    cldm->add_option("--eps", eps, "accuracy")->required();
    cldm->add_option("--delta", delta, "failure budget");
    cldm->add_option("--alpha", alpha, "consistency slack");
    cldm->add_option("--num-qubits", num_qubits, "covering-set dimension");
    cldm->add_flag("--psd-project", psd_project, "clip estimates onto the PSD cone");
    cldm->add_option("--seed", seed, "rng seed");
    cldm->add_option("--report", report, "report file");

    auto* protocol = app.add_subcommand("protocol", "composite pipelines");
    std::string protocol_op;
    protocol->add_option("op", protocol_op, "nonadaptive|qcma|ksep|strongred")->required();
    protocol->add_option("--spec", spec, "verifier spec JSON");
    protocol->add_option("--hamiltonian", hamiltonian, "Hamiltonian JSON (ksep)");
    protocol->add_option("--witness", witness, "witness JSON (ksep)");
    protocol->add_option("--proof", proof, "proof JSON (strongred)");
    protocol->add_option("--proof-yes", proof_yes, "honest proof for measurement");
    protocol->add_option("--proof-no", proof_no, "adversarial proof for measurement");
    protocol->add_option("--x", x_bits, "input bits");
    protocol->add_option("--c", c_param, "completeness");
    protocol->add_option("--s", s_param, "soundness");
    protocol->add_option("--cap", cap, "executed repetition cap");
    protocol->add_option("--l", rounds, "sequential runs (strongred)");
    protocol->add_option("--seed", seed, "rng seed");
    protocol->add_option("--report", report, "report file");

    auto* fixture = app.add_subcommand("fixture", "generate named fixtures");
    fixture->add_option("family", family, "fixture family")->required();
    fixture->add_option("--seed", seed, "rng seed");
    fixture->add_option("--out", out, "output directory");
    fixture->add_option("--report", report, "report file");

    auto* repro = app.add_subcommand("repro", "re-run an experiment config or report");
    repro->add_option("--config", config_path, "experiment config or report JSON")
        ->required();
    repro->add_option("--out", out, "report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        qpcp::Json config;
        if (verify->parsed()) {
            config = {{"pipeline", "verify"}, {"spec", spec}, {"proof", proof},
                      {"mode", exact ? "exact" : "shots"}, {"seed", seed}};
            if (!exact) {
                config["shots"] = shots;
            }
            if (!x_bits.empty()) {
                config["x"] = x_bits;
            }
        } else if (reduce->parsed()) {
            if (exact == learn) {
                std::cerr << "reduce: pass exactly one of --exact / --learn\n";
                return 2;
            }
            config = {{"pipeline", "reduce"}, {"spec", spec},
                      {"mode", exact ? "exact" : "learn"}, {"seed", seed}};
            if (learn) {
                config["eps"] = eps;
                config["delta"] = delta;
                if (reduce->count("--round") > 0) {
                    config["round"] = eta;
                }
                if (compare) {
                    config["compare"] = true;
                }
            }
            if (!x_bits.empty()) {
                config["x"] = x_bits;
            }
            if (!out.empty()) {
                config["out"] = out;
            }
        } else if (ham->parsed()) {
            config = {{"pipeline", "ham"}, {"op", ham_op}, {"in", hamiltonian},
                      {"l", l_count}, {"seed", seed}};
            if (!out.empty()) {
                config["out"] = out;
            }
        } else if (cldm->parsed()) {
            config = {{"pipeline", "cldm"}, {"op", cldm_op}, {"eps", eps},
                      {"delta", delta}, {"seed", seed}};
            if (cldm_op == "cover") {
                config["num_qubits"] = num_qubits;
            } else {
                if (state.empty() || marginals.empty()) {
                    std::cerr << "cldm " << cldm_op << ": --state and --spec required\n";
                    return 2;
                }
                config["state"] = state;
                config["spec"] = marginals;
                config["alpha"] = alpha;
                if (psd_project) {
                    config["psd_project"] = true;
                }
            }
        } else if (protocol->parsed()) {
            config = {{"pipeline", "protocol"}, {"op", protocol_op},
                      {"c", c_param}, {"s", s_param}, {"seed", seed}};
            if (!spec.empty()) {
                config["spec"] = spec;
            }
            if (!hamiltonian.empty()) {
                config["hamiltonian"] = hamiltonian;
            }
            if (!witness.empty()) {
                config["witness"] = witness;
            }
            if (!proof.empty()) {
                config["proof"] = proof;
            }
            if (!proof_yes.empty()) {
                config["proof_yes"] = proof_yes;
            }
            if (!proof_no.empty()) {
                config["proof_no"] = proof_no;
            }
            if (!x_bits.empty()) {
                config["x"] = x_bits;
            }
            config["cap"] = cap;
            config["l"] = rounds;
        } else if (fixture->parsed()) {
            config = {{"pipeline", "fixture"}, {"family", family}, {"seed", seed}};
            if (!out.empty()) {
                config["out_dir"] = out;
            }
        } else if (repro->parsed()) {
            const auto res = qpcp::run_experiment(config_path, out);
            std::cout << res.body.dump(2) << "\n";
            return res.ok ? 0 : 1;
        }
        return finish(config, report);
    } catch (const qpcp::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return 1;
    }
}
