// Copyright 2026 The qdh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdh/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdh/gba.h"
#include "qdh/op_poly.h"
#include "qdh/states.h"
#include "qdh/verify.h"

using namespace qdh;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kBoundCurveMax = 20;
constexpr int kOmegaRuns = 1000;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
    return buf;
}

std::string general(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void emit_report(const std::string &report, const std::string &output_path, std::ostream &out) {
    if (output_path.empty()) {
        out << report;
        return;
    }
    std::ofstream f(output_path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file " + output_path);
    }
    f << report;
}

int cmd_expand(int eq, double p, bool dump_state, std::ostream &out) {
    SourceParams params{p, 2};
    params.validate();
    auto print_sectors = [&](const std::vector<Sector> &sectors) {
        for (const auto &s : sectors) {
            out << "sector " << s.pairs << " pair(s), weight p^(" << s.pairs << "/2) = " << general(s.weight) << ":\n";
            out << "  " << s.poly.str() << "\n";
            out << "  exact norm^2 = " << exact_norm_squared(s.poly).str() << "\n";
            if (dump_state) {
                out << serialize(apply_to_vacuum(s.poly));
            }
        }
    };
    switch (eq) {
        case 1:
            out << "Single-pass expansion on paths (1,2), p = " << general(p) << "\n";
            out << "a12 = " << singlet_op(1, 2).str() << "\n";
            print_sectors(spdc_single_pass(params, 1, 2));
            return kExitOk;
        case 2:
            out << "Double-pass expansion on paths (1,2),(3,4), p = " << general(p) << "\n";
            print_sectors(spdc_double_pass(params));
            return kExitOk;
        case 3: {
            auto t = theta_poly();
            out << "Theta = a12 a34 + a12^2/2 + a34^2/2\n  = " << t.str() << "\n";
            out << "exact norm^2 = " << exact_norm_squared(t).str() << "\n";
            if (dump_state) {
                out << serialize(apply_to_vacuum(t));
            }
            return kExitOk;
        }
        case 4: {
            auto terms = theta_decomposition_terms();
            out << "RHS =";
            for (const auto &t : terms) {
                out << (t.sign > 0 ? " + " : " - ") << name_of(t.first) << "_13 " << name_of(t.second) << "_24";
            }
            out << "\n  = " << decomposition_rhs_poly(terms).str() << "\n";
            try {
                auto c = verify_decomposition(terms);
                out << "Theta = c * RHS with c = " << c.str() << "\n";
                bool pass = c == RingElement(mpq_class(1, 2));
                out << (pass ? "PASS" : "FAIL") << "\n";
                return pass ? kExitOk : kExitVerificationFailed;
            } catch (const NotProportional &) {
                out << "not proportional\nFAIL\n";
                return kExitVerificationFailed;
            }
        }
        default:
            throw UsageError("--eq must be 1, 2, 3 or 4");
    }
}

int cmd_gba_table(bool use_calibrated, std::ostream &out) {
    GbaCircuit circuit = use_calibrated ? calibrate() : GbaCircuit::standard();
    GeneralizedBellAnalyzer gba(circuit);
    out << "circuit: " << circuit.str() << "\n";
    out << "state(1,3)  class   P(class)  clicks\n";
    bool ok = true;
    for (auto label : kAllBellLabels) {
        auto expected = class_of(label);
        double p = 0;
        std::string clicks;
        for (const auto &b : gba.branches(bell(label, 1, 3), kHiderPaths)) {
            if (b.klass == expected) {
                p += b.probability;
            }
            clicks += " " + b.pattern.str() + ":" + fixed(b.probability, 3);
        }
        ok = ok && std::abs(p - 1) <= 1e-10;
        char row[64];
        std::snprintf(row, sizeof(row), "%-10s  %-6s  %s    ", name_of(label).c_str(), name_of(expected).c_str(),
                      fixed(p, 3).c_str());
        out << row << clicks << "\n";
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(std::ostream &out) {
    bool ok = true;
    for (const auto &r : run_identity_suite()) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        ok = ok && r.passed;
    }
    out << (ok ? "all identities hold" : "verification FAILED") << "\n";
    return ok ? kExitOk : kExitVerificationFailed;
}

ordered_json stats_json(const SessionStats &s) {
    return ordered_json{
        {"secret", s.secret},
        {"decoded_bit", s.decoded_bit},
        {"pairs_drawn", s.pairs_drawn},
        {"pairs_rejected", s.pairs_rejected},
        {"pulses_total", s.pulses_total},
        {"class_hist", s.class_histogram},
        {"s1_fraction", s.s1_fraction_estimate()},
    };
}

}  // namespace

std::string qdh::simulate_json(const SessionReport &report) {
    const auto &c = report.config;
    const auto &a = report.aggregate;
    ordered_json labels = ordered_json::object();
    for (auto label : kAllBellLabels) {
        labels[name_of(label)] = a.label_histogram[index_of(label)];
    }
    ordered_json j{
        {"config", {{"n", c.n}, {"secret", c.secret}, {"p", c.p}, {"trials", c.trials}, {"seed", c.seed}}},
        {"stats",
         {
             {"success_rate", a.success_rate()},
             {"class_hist", a.class_histogram},
             {"s1_fraction", a.s1_fraction()},
             {"pulses_mean", a.pulses_mean()},
             {"pairs_drawn", a.pairs_drawn},
             {"pairs_rejected", a.pairs_rejected},
             {"pulses_total", a.pulses_total},
             {"label_hist", labels},
         }},
    };
    if (c.keep_per_trial) {
        ordered_json trials = ordered_json::array();
        for (const auto &s : report.per_trial) {
            trials.push_back(stats_json(s));
        }
        j["per_trial"] = trials;
    }
    return j.dump(2) + "\n";
}

std::string qdh::simulate_csv(const SessionReport &report) {
    std::string out = "trial,secret,decoded_bit,pairs_drawn,pairs_rejected,pulses_total,class1,class2,class3,s1_fraction\n";
    for (size_t k = 0; k < report.per_trial.size(); k++) {
        const auto &s = report.per_trial[k];
        out += std::to_string(k) + "," + std::to_string(s.secret) + "," + std::to_string(s.decoded_bit) + "," +
               std::to_string(s.pairs_drawn) + "," + std::to_string(s.pairs_rejected) + "," +
               std::to_string(s.pulses_total) + "," + std::to_string(s.class_histogram[0]) + "," +
               std::to_string(s.class_histogram[1]) + "," + std::to_string(s.class_histogram[2]) + "," +
               general(s.s1_fraction_estimate()) + "\n";
    }
    return out;
}

AnalyzeReport qdh::build_analyze_report(int n, const Prior &prior, uint64_t seed) {
    AnalyzeReport r;
    r.n = n;
    r.prior = prior;
    auto e0 = hiding_ensemble(0, n);
    auto e1 = hiding_ensemble(1, n);
    auto rho0 = hiding_density_matrix(0, n);
    auto rho1 = hiding_density_matrix(1, n);
    r.trace_distance = trace_distance(rho0, rho1);
    r.helstrom_error = helstrom_error(rho0, rho1, prior);
    r.information_bound = information_bound(rho0, rho1, prior);
    r.strategies.push_back(local_count_strategy(e0, e1, prior));
    r.strategies.push_back(joint_gba_strategy(e0, e1, prior));

    std::mt19937_64 rng(seed);
    int correct = 0;
    for (int k = 0; k < kOmegaRuns; k++) {
        correct += locc_distinguish_omega(bell(BellLabel::OmegaPlus, 2, 4), rng).sign == 1;
        correct += locc_distinguish_omega(bell(BellLabel::OmegaMinus, 2, 4), rng).sign == -1;
    }
    r.omega_locc_success = correct / (2.0 * kOmegaRuns);
    r.omega_local_count_information =
        local_count_strategy(pure_ensemble(bell(BellLabel::OmegaPlus, 2, 4)),
                             pure_ensemble(bell(BellLabel::OmegaMinus, 2, 4)), prior)
            .mutual_information;
    for (int m = 1; m <= kBoundCurveMax; m++) {
        r.bound_curve.push_back(security_bound(m, prior));
    }
    return r;
}

std::string qdh::analyze_json(const AnalyzeReport &r) {
    ordered_json strategies = ordered_json::array();
    for (const auto &s : r.strategies) {
        strategies.push_back({
            {"strategy", s.strategy},
            {"locc", s.strategy != "joint_gba"},
            {"mutual_information", s.mutual_information},
            {"bound", s.bound},
            {"transcripts", s.transcripts.size()},
        });
    }
    ordered_json curve = ordered_json::array();
    for (size_t k = 0; k < r.bound_curve.size(); k++) {
        curve.push_back({{"m", k + 1}, {"delta", std::ldexp(1.0, -static_cast<int>(k))}, {"bound", r.bound_curve[k]}});
    }
    ordered_json j{
        {"config", {{"n", r.n}, {"prior", r.prior}}},
        {"trace_distance", r.trace_distance},
        {"helstrom_error", r.helstrom_error},
        {"information_bound", r.information_bound},
        {"strategies", strategies},
        {"omega", {{"locc_success_rate", r.omega_locc_success}, {"local_count_information", r.omega_local_count_information}}},
        {"bound_curve", curve},
    };
    return j.dump(2) + "\n";
}

std::string qdh::analyze_csv(const AnalyzeReport &r) {
    std::string out = "quantity,strategy,m,value\n";
    out += "trace_distance,,," + general(r.trace_distance) + "\n";
    out += "helstrom_error,,," + general(r.helstrom_error) + "\n";
    out += "information_bound,,," + general(r.information_bound) + "\n";
    for (const auto &s : r.strategies) {
        out += "mutual_information," + s.strategy + ",," + general(s.mutual_information) + "\n";
    }
    out += "omega_locc_success,,," + general(r.omega_locc_success) + "\n";
    out += "omega_local_count_information,,," + general(r.omega_local_count_information) + "\n";
    for (size_t k = 0; k < r.bound_curve.size(); k++) {
        out += "security_bound,," + std::to_string(k + 1) + "," + general(r.bound_curve[k]) + "\n";
    }
    return out;
}

int qdh::run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulator and analysis toolkit for quantum data hiding with down-converted photon pairs", "qdh"};
    app.require_subcommand(1);

    int eq = 0;
    double expand_p = 0.01;
    bool dump_state = false;
    auto *expand = app.add_subcommand("expand", "Print the exact operator expansions");
    expand->add_option("--eq", eq, "Expansion to print: 1 single pass, 2 double pass, 3 four-photon state, 4 decomposition")
        ->required();
    expand->add_option("--p", expand_p, "Pair probability used for the printed sector weights")->capture_default_str();
    expand->add_flag("--dump-state", dump_state, "Also print each expansion as a numeric Fock state");

    bool calibrated = false;
    auto *table = app.add_subcommand("gba-table", "Print the analyzer's state-to-class table");
    table->add_flag("--calibrated", calibrated, "Use the circuit found by calibration instead of the standard layout");

    SessionConfig sim;
    std::string sim_format = "json";
    std::string sim_output;
    bool per_trial = false;
    auto *simulate = app.add_subcommand("simulate", "Run seeded encode/decode sessions");
    simulate->add_option("--n", sim.n, "Pairs per hidden bit")->capture_default_str();
    simulate->add_option("--secret", sim.secret, "Hidden bit (0 or 1)")->capture_default_str();
    simulate->add_option("--p", sim.p, "Pair probability per pump pass, in (0, 0.1]")->capture_default_str();
    simulate->add_option("--trials", sim.trials, "Number of sessions")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Root seed")->capture_default_str();
    simulate->add_option("--format", sim_format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    simulate->add_option("--output", sim_output, "Write the report here instead of standard output");
    simulate->add_flag("--per-trial", per_trial, "Include per-session statistics in JSON reports");

    int an_n = 1;
    double an_prior = 0.5;
    uint64_t an_seed = 1;
    std::string an_format = "json";
    std::string an_output;
    auto *analyze = app.add_subcommand("analyze", "Exact small-n security analysis");
    analyze->add_option("--n", an_n, "Pairs per hidden bit (1..3)")->capture_default_str();
    analyze->add_option("--prior", an_prior, "Prior probability of b = 0")->capture_default_str();
    analyze->add_option("--seed", an_seed, "Seed for the sampled Omega discrimination runs")->capture_default_str();
    analyze->add_option("--report", an_format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    analyze->add_option("--output", an_output, "Write the report here instead of standard output");

    auto *verify = app.add_subcommand("verify", "Run the identity suite");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*expand) {
            return cmd_expand(eq, expand_p, dump_state, out);
        }
        if (*table) {
            return cmd_gba_table(calibrated, out);
        }
        if (*simulate) {
            sim.keep_per_trial = per_trial || sim_format == "csv";
            try {
                sim.validate();
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
            auto report = run_sessions(sim);
            std::string text = sim_format == "json" ? simulate_json(report) : simulate_csv(report);
            if (!sim_output.empty()) {
                const auto &a = report.aggregate;
                out << "sessions " << a.trials << ", success rate " << fixed(a.success_rate(), 4) << ", pairs "
                    << a.pairs_drawn << ", S1 fraction " << fixed(a.s1_fraction(), 4) << "\n";
            }
            emit_report(text, sim_output, out);
            return kExitOk;
        }
        if (*analyze) {
            if (an_n < 1 || an_n > kMaxExactPairs) {
                throw UsageError("n ≤ 3 for exact analysis");
            }
            if (!(an_prior >= 0 && an_prior <= 1)) {
                throw UsageError("prior must lie in [0, 1]");
            }
            auto report = build_analyze_report(an_n, {an_prior, 1 - an_prior}, an_seed);
            std::string text = an_format == "json" ? analyze_json(report) : analyze_csv(report);
            if (!an_output.empty()) {
                out << "n " << report.n << ", trace distance " << fixed(report.trace_distance, 6)
                    << ", local photon counting I = " << general(report.strategies[0].mutual_information) << " bits\n";
            }
            emit_report(text, an_output, out);
            return kExitOk;
        }
        if (*verify) {
            return cmd_verify(out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
