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

#include "qdh/verify.h"

#include <cmath>
#include <functional>
#include <random>

#include "qdh/analysis.h"
#include "qdh/gba.h"
#include "qdh/op_poly.h"
#include "qdh/states.h"

using namespace qdh;

namespace {

CheckResult guarded(const std::string &name, const std::function<CheckResult()> &body) {
    try {
        return body();
    } catch (const std::exception &e) {
        return {name, false, std::string("threw: ") + e.what()};
    }
}

CheckResult check_decomposition() {
    auto c = verify_decomposition();
    bool ok = c == RingElement(mpq_class(1, 2));
    int rejected = 0;
    auto terms = theta_decomposition_terms();
    for (auto &t : terms) {
        t.sign = -t.sign;
        try {
            verify_decomposition(terms);
        } catch (const NotProportional &) {
            rejected++;
        }
        t.sign = -t.sign;
    }
    ok = ok && rejected == static_cast<int>(terms.size());
    return {"four-photon decomposition", ok,
            "constant " + c.str() + ", " + std::to_string(rejected) + "/" + std::to_string(terms.size()) +
                " sign mutations rejected"};
}

CheckResult check_bases() {
    double worst = 0;
    for (auto a : kAllBellLabels) {
        for (auto b : kAllBellLabels) {
            double expect = a == b ? 1 : 0;
            worst = std::max(worst, std::abs(inner(bell(a, 1, 3), bell(b, 1, 3)) - expect));
        }
    }
    return {"ten-state basis orthonormal", worst <= 1e-12, "max Gram deviation " + std::to_string(worst)};
}

CheckResult check_class_table() {
    bool ok = reproduces_class_table(GbaCircuit::standard()) && calibrate() == GbaCircuit::standard();
    return {"analyzer class table", ok, "calibrated circuit " + calibrate().str()};
}

CheckResult check_heralding() {
    GeneralizedBellAnalyzer gba;
    auto sectors = spdc_double_pass(SourceParams{});
    bool ok = true;
    std::string detail;
    for (const auto &s : sectors) {
        auto state = apply_to_vacuum(s.poly).normalized();
        for (const auto &[ket, amp] : state.amplitudes()) {
            int into_analyzer = ket.split(kHiderPaths.modes()).first.total();
            ok = ok && into_analyzer == s.pairs;
        }
        for (const auto &b : gba.branches(state, kHiderPaths)) {
            ok = ok && b.pattern.total() == s.pairs && b.klass.has_value() == (s.pairs == 2);
        }
        detail += std::to_string(s.pairs) + "-pair sector -> " + std::to_string(s.pairs) + " click(s); ";
    }
    return {"heralding soundness", ok, detail};
}

CheckResult check_oracle() {
    double worst = 0;
    for (auto label : kAllBellLabels) {
        for (auto [i, j] : {std::pair{1, 3}, std::pair{2, 4}}) {
            auto numeric = bell(label, i, j);
            auto exact = apply_to_vacuum(bell_poly(label, i, j));
            for (const auto &[ket, amp] : exact.amplitudes()) {
                worst = std::max(worst, std::abs(amp - numeric.amplitude(ket)));
            }
            worst = std::max(worst, std::abs(numeric.norm_squared() - exact.norm_squared()));
        }
    }
    auto t = theta_unnormalized();
    auto t_exact = apply_to_vacuum(theta_poly());
    worst = std::max(worst, t.approx_equal(t_exact, 1e-12) ? 0.0 : 1.0);
    bool ok = worst <= 1e-12 && exact_norm_squared(theta_poly()) == RingElement(mpq_class(5, 2)) &&
              std::abs(inner(t, t).real() - 2.5) <= 1e-12;
    auto two_pair = spdc_single_pass(SourceParams{}, 1, 2)[2].poly;
    ok = ok && exact_norm_squared(two_pair) == RingElement(mpq_class(3, 4));
    return {"numeric vs exact oracle", ok, "<Theta|Theta> = 5/2, two-pair norm^2 = 3/4"};
}

CheckResult check_label_law() {
    bool ok = true;
    for (const auto &[label, p] : label_probabilities()) {
        ok = ok && p == RingElement(mpq_class(1, 10));
    }
    RingElement s1;
    for (const auto &[label, p] : label_probabilities()) {
        if (set_of(label) == BellSet::S1) {
            s1 += p;
        }
    }
    ok = ok && s1 == RingElement(mpq_class(2, 5));
    return {"label probabilities", ok, "each label 1/10, S1 total " + s1.str()};
}

CheckResult check_bound() {
    bool ok = true;
    for (int m = 1; m <= 20; m++) {
        ok = ok && security_bound(m, kUniformPrior) == std::ldexp(1.0, 1 - m);
    }
    return {"security bound halving", ok, "H/2^(m-1) for m = 1..20"};
}

CheckResult check_orthogonality() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 2; n++) {
        auto r0 = hiding_density_matrix(0, n);
        auto r1 = hiding_density_matrix(1, n);
        double overlap = (r0.matrix * r1.matrix).cwiseAbs().maxCoeff();
        double td = trace_distance(r0, r1);
        ok = ok && overlap <= 1e-10 && std::abs(td - 1) <= 1e-10;
        detail += "n=" + std::to_string(n) + " trace distance " + std::to_string(td) + "; ";
    }
    return {"hiding ensembles orthogonal", ok, detail};
}

CheckResult check_omega() {
    std::mt19937_64 rng(2026);
    int wrong = 0;
    for (int k = 0; k < 200; k++) {
        wrong += locc_distinguish_omega(bell(BellLabel::OmegaPlus, 2, 4), rng).sign != 1;
        wrong += locc_distinguish_omega(bell(BellLabel::OmegaMinus, 2, 4), rng).sign != -1;
    }
    auto counts = local_count_strategy(pure_ensemble(bell(BellLabel::OmegaPlus, 2, 4)),
                                       pure_ensemble(bell(BellLabel::OmegaMinus, 2, 4)), kUniformPrior);
    bool ok = wrong == 0 && std::abs(counts.mutual_information) <= 1e-9;
    return {"Omega LOCC discrimination", ok,
            std::to_string(wrong) + " wrong guesses in 400 runs; photon counting I = " +
                std::to_string(counts.mutual_information)};
}

}  // namespace

std::vector<CheckResult> qdh::run_identity_suite() {
    return {
        guarded("four-photon decomposition", check_decomposition),
        guarded("ten-state basis orthonormal", check_bases),
        guarded("analyzer class table", check_class_table),
        guarded("heralding soundness", check_heralding),
        guarded("numeric vs exact oracle", check_oracle),
        guarded("label probabilities", check_label_law),
        guarded("security bound halving", check_bound),
        guarded("hiding ensembles orthogonal", check_orthogonality),
        guarded("Omega LOCC discrimination", check_omega),
    };
}
