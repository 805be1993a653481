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

#ifndef QDH_CLI_H
#define QDH_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

#include "qdh/analysis.h"
#include "qdh/protocol.h"

namespace qdh {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

/// Entry point of the `qdh` tool. Subcommands: expand, gba-table, simulate,
/// analyze, verify. Human-readable text goes to `out`; machine reports go to
/// `--output` when given and to `out` otherwise.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Report builders, exposed for tests.
std::string simulate_json(const SessionReport &report);
std::string simulate_csv(const SessionReport &report);

struct AnalyzeReport {
    int n = 1;
    Prior prior = kUniformPrior;
    double trace_distance = 0;
    double helstrom_error = 0;
    double information_bound = 0;
    std::vector<StrategyResult> strategies;
    double omega_locc_success = 0;
    double omega_local_count_information = 0;
    std::vector<double> bound_curve;  // index m-1, m = 1..20
};

AnalyzeReport build_analyze_report(int n, const Prior &prior, uint64_t seed);
std::string analyze_json(const AnalyzeReport &report);
std::string analyze_csv(const AnalyzeReport &report);

}  // namespace qdh

#endif
