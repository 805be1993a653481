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


// Acceptance gate. Runs every acceptance criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "qdh/analysis.h"
#include "qdh/gba.h"
#include "qdh/op_poly.h"
#include "qdh/protocol.h"
#include "qdh/states.h"

using namespace qdh;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char *format, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), format, a, b, c, d);
    return buf;
}

// Numeric a_ij^k / k! |vac> built with ladder operators only.
FockState numeric_singlet_power(int i, int j, int k) {
    FockState state = vacuum();
    double r = std::sqrt(0.5);
    for (int step = 1; step <= k; step++) {
        state = (create(create(state, h(i)), v(j)) * r - create(create(state, v(i)), h(j)) * r) * (1.0 / step);
    }
    return state;
}

Outcome criterion_decomposition() {
    auto c = verify_decomposition();
    int rejected = 0;
    auto terms = theta_decomposition_terms();
    for (size_t k = 0; k < terms.size(); k++) {
        auto mutated = terms;
        mutated[k].sign = -mutated[k].sign;
        try {
            verify_decomposition(mutated);
        } catch (const NotProportional &) {
            rejected++;
        }
    }
    bool ok = c == RingElement::rational("1/2") && rejected == static_cast<int>(terms.size());
    return {ok, "c = " + c.str() + ", " + std::to_string(rejected) + "/10 single sign flips rejected"};
}

Outcome criterion_gram() {
    double worst = 0;
    std::array<int, 2> dims{};
    for (auto set : {BellSet::S1, BellSet::S2}) {
        std::vector<BellLabel> labels;
        for (auto l : kAllBellLabels) {
            if (set_of(l) == set) {
                labels.push_back(l);
            }
        }
        dims[set == BellSet::S1 ? 0 : 1] = static_cast<int>(labels.size());
        for (auto [i, j] : {std::pair{1, 3}, std::pair{2, 4}}) {
            for (auto a : labels) {
                for (auto b : labels) {
                    worst = std::max(worst, std::abs(inner(bell(a, i, j), bell(b, i, j)) - (a == b ? 1.0 : 0.0)));
                }
            }
        }
    }
    bool ok = worst <= 1e-12 && dims[0] == 4 && dims[1] == 6;
    return {ok, fmt("S1 dim %g, S2 dim %g, max |G - I| = %.3g", dims[0], dims[1], worst)};
}

Outcome criterion_gba_table() {
    GeneralizedBellAnalyzer gba;
    std::mt19937_64 rng(20260101);
    int deviations = 0;
    for (auto label : kAllBellLabels) {
        auto state = bell(label, 1, 3);
        for (int k = 0; k < 1000; k++) {
            auto out = gba.measure(state, kHiderPaths, rng);
            deviations += !out.heralded() || *out.klass != class_of(label);
        }
    }
    bool expected_map = class_of(BellLabel::PhiPlus) == GbaClass::Class1 &&
                        class_of(BellLabel::OmegaPlus) == GbaClass::Class1 &&
                        class_of(BellLabel::PhiMinus) == GbaClass::Class2 &&
                        class_of(BellLabel::OmegaMinus) == GbaClass::Class2;
    for (auto l : {BellLabel::PsiPlus, BellLabel::PsiMinus, BellLabel::GammaPlus, BellLabel::GammaMinus,
                   BellLabel::UpsilonPlus, BellLabel::UpsilonMinus}) {
        expected_map = expected_map && class_of(l) == GbaClass::Class3;
    }
    return {deviations == 0 && expected_map, std::to_string(deviations) + " deviations in 10 x 1000 trials"};
}

Outcome criterion_source_statistics() {
    PairSource source(SourceParams{0.01, 2});
    std::mt19937_64 rng(trial_seed(4, 0, 0));
    std::mt19937_64 diag(trial_seed(4, 0, 1));
    SessionAggregate agg;
    const uint64_t draws = 100000;
    for (uint64_t k = 0; k < draws; k++) {
        auto rec = source.next_heralded(rng);
        agg.pairs_drawn++;
        agg.pulses_total += rec.pulses_consumed;
        agg.class_histogram[index_of(rec.klass)]++;
        agg.label_histogram[index_of(measure_label(rec.pair_state, kSharerPaths, diag))]++;
    }
    bool ok = true;
    double worst_label = 0;
    for (auto count : agg.label_histogram) {
        worst_label = std::max(worst_label, std::abs(count / double(draws) - 0.1));
    }
    ok = ok && worst_label <= 0.01;
    std::array<double, 3> expect{0.2, 0.2, 0.6};
    std::array<double, 3> freq{};
    for (int c = 0; c < 3; c++) {
        freq[c] = agg.class_histogram[c] / double(draws);
        ok = ok && std::abs(freq[c] - expect[c]) <= 0.01;
    }
    double s1 = agg.s1_fraction();
    double overhead = overhead_factor(agg);
    ok = ok && std::abs(s1 - 0.4) <= 0.01 && std::abs(overhead - 2.5) <= 0.06;
    return {ok, fmt("max label dev %.4f, classes (%.4f, %.4f, %.4f)", worst_label, freq[0], freq[1], freq[2]) +
                    fmt(", S1 %.4f, overhead %.4f", s1, overhead) +
                    fmt(", pulses/herald %.1f", agg.pulses_mean())};
}

Outcome criterion_heralding() {
    GeneralizedBellAnalyzer gba;
    bool ok = true;
    std::string detail;
    for (const auto &sector : spdc_double_pass(SourceParams{})) {
        auto state = apply_to_vacuum(sector.poly);
        size_t kets = 0;
        for (const auto &[ket, amp] : state.amplitudes()) {
            kets++;
            for (const auto &b : gba.branches(FockState{{ket, 1.0}}, kHiderPaths)) {
                ok = ok && b.pattern.total() == sector.pairs;
                ok = ok && b.klass.has_value() == (sector.pairs == 2);
            }
        }
        detail += std::to_string(sector.pairs) + "-pair sector: " + std::to_string(kets) + " kets -> " +
                  std::to_string(sector.pairs) + " detected; ";
    }
    return {ok, detail};
}

Outcome criterion_protocol() {
    bool ok = true;
    uint64_t sessions = 0;
    uint64_t failures = 0;
    for (int n : {1, 2, 4, 8, 16}) {
        for (int b : {0, 1}) {
            SessionConfig config;
            config.n = n;
            config.secret = b;
            config.trials = 1000;
            config.seed = 1000 + 10 * n + b;
            auto agg = run_sessions(config).aggregate;
            sessions += agg.trials;
            failures += agg.trials - agg.successes;
            ok = ok && agg.success_rate() == 1.0;
        }
    }
    return {ok, std::to_string(sessions) + " sessions, " + std::to_string(failures) + " decoding failures"};
}

Outcome criterion_bound() {
    bool ok = true;
    for (int m = 1; m <= 20; m++) {
        double b = security_bound(m, kUniformPrior);
        ok = ok && b == std::ldexp(1.0, 1 - m);
        if (m > 1) {
            ok = ok && b < security_bound(m - 1, kUniformPrior) && 2 * b == security_bound(m - 1, kUniformPrior);
        }
    }
    return {ok, fmt("bound(1) = %g, bound(20) = %g", security_bound(1, kUniformPrior),
                    security_bound(20, kUniformPrior))};
}

Outcome criterion_orthogonality() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 2; n++) {
        auto r0 = hiding_density_matrix(0, n);
        auto r1 = hiding_density_matrix(1, n);
        double overlap = (r0.matrix * r1.matrix).cwiseAbs().maxCoeff();
        double td = trace_distance(r0, r1);
        ok = ok && overlap <= 1e-10 && std::abs(td - 1) <= 1e-10;
        detail += fmt("n=%g: max|r0 r1| = %.2g, |TD - 1| = %.2g; ", n, overlap, std::abs(td - 1));
    }
    return {ok, detail};
}

Outcome criterion_omega() {
    std::mt19937_64 rng(909);
    int wrong = 0;
    auto plus = bell(BellLabel::OmegaPlus, 2, 4);
    auto minus = bell(BellLabel::OmegaMinus, 2, 4);
    for (int k = 0; k < 1000; k++) {
        wrong += locc_distinguish_omega(plus, rng).sign != 1;
        wrong += locc_distinguish_omega(minus, rng).sign != -1;
    }
    double info = local_count_strategy(pure_ensemble(plus), pure_ensemble(minus), kUniformPrior).mutual_information;
    bool ok = wrong == 0 && std::abs(info) <= 1e-9;
    return {ok, std::to_string(wrong) + " wrong of 2000 runs, local counting I = " + fmt("%.3g", info)};
}

Outcome criterion_oracle() {
    double worst = 0;
    auto compare = [&](const FockState &numeric, const FockState &exact) {
        for (const auto &[ket, amp] : exact.amplitudes()) {
            worst = std::max(worst, std::abs(amp - numeric.amplitude(ket)));
        }
        for (const auto &[ket, amp] : numeric.amplitudes()) {
            worst = std::max(worst, std::abs(amp - exact.amplitude(ket)));
        }
    };
    for (auto label : kAllBellLabels) {
        for (auto [i, j] : {std::pair{1, 3}, std::pair{2, 4}}) {
            compare(bell(label, i, j), apply_to_vacuum(bell_poly(label, i, j)));
        }
    }
    SourceParams params{0.01, 4};
    for (auto [i, j] : {std::pair{1, 2}, std::pair{3, 4}}) {
        for (const auto &sector : spdc_single_pass(params, i, j)) {
            compare(numeric_singlet_power(i, j, sector.pairs), apply_to_vacuum(sector.poly));
        }
    }
    compare(theta_unnormalized(), apply_to_vacuum(theta_poly()));
    auto t = theta_unnormalized();
    auto two_pair = numeric_singlet_power(1, 2, 2);
    bool exact_norms = exact_norm_squared(theta_poly()) == RingElement::rational("5/2") &&
                       exact_norm_squared(spdc_single_pass(params, 1, 2)[2].poly) == RingElement::rational("3/4");
    double norm_dev = std::max(std::abs(inner(t, t).real() - 2.5), std::abs(two_pair.norm_squared() - 0.75));
    bool ok = worst <= 1e-12 && norm_dev <= 1e-12 && exact_norms;
    return {ok, fmt("max ket deviation %.2g, <Theta|Theta> = %.15g, two-pair norm^2 = %.15g", worst,
                    inner(t, t).real(), two_pair.norm_squared())};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        std::function<Outcome()> run;
        double time_limit;  // seconds; 0 = none stated
    };
    std::vector<Criterion> criteria{
        {1, "four-photon decomposition, exact", criterion_decomposition, 1},
        {2, "basis completeness", criterion_gram, 0},
        {3, "analyzer class table", criterion_gba_table, 0},
        {4, "source statistics at p = 0.01", criterion_source_statistics, 60},
        {5, "heralding soundness", criterion_heralding, 0},
        {6, "protocol correctness", criterion_protocol, 30},
        {7, "security bound values", criterion_bound, 0},
        {8, "ensemble orthogonality", criterion_orthogonality, 0},
        {9, "LOCC ingredient", criterion_omega, 0},
        {10, "oracle agreement", criterion_oracle, 0},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception &e) {
            outcome = {false, std::string("threw: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0 && seconds >= c.time_limit) {
            outcome.passed = false;
            outcome.detail += " (over the time limit)";
        }
        failed += !outcome.passed;
        std::printf("[%s] criterion %d: %s (%.2fs) %s\n", outcome.passed ? "PASS" : "FAIL", c.id, c.name, seconds,
                    outcome.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
