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

#include "qdh/states.h"

#include <cmath>

using namespace qdh;

void SourceParams::validate() const {
    if (!(p > 0 && p <= 0.1)) {
        throw std::invalid_argument("p must lie in (0, 0.1]");
    }
    if (max_pairs < 2 || max_pairs > 4) {
        throw std::invalid_argument("max_pairs must lie in [2, 4]");
    }
}

namespace {

void check_paths(int i, int j) {
    if (i == j) {
        throw std::invalid_argument("basis state needs two distinct paths");
    }
}

struct LabelShape {
    Mode a1, a2;  // first creation pair
    Mode b1, b2;  // second creation pair
    int sign;
    bool halved;  // coefficient 1/2 (double occupancy) instead of 1/sqrt(2)
};

LabelShape shape_of(BellLabel label, int i, int j) {
    switch (label) {
        case BellLabel::PhiPlus:
            return {h(i), h(j), v(i), v(j), +1, false};
        case BellLabel::PhiMinus:
            return {h(i), h(j), v(i), v(j), -1, false};
        case BellLabel::PsiPlus:
            return {h(i), v(j), v(i), h(j), +1, false};
        case BellLabel::PsiMinus:
            return {h(i), v(j), v(i), h(j), -1, false};
        case BellLabel::GammaPlus:
            return {h(i), h(i), v(j), v(j), +1, true};
        case BellLabel::GammaMinus:
            return {h(i), h(i), v(j), v(j), -1, true};
        case BellLabel::UpsilonPlus:
            return {v(i), v(i), h(j), h(j), +1, true};
        case BellLabel::UpsilonMinus:
            return {v(i), v(i), h(j), h(j), -1, true};
        case BellLabel::OmegaPlus:
            return {h(i), v(i), h(j), v(j), +1, false};
        case BellLabel::OmegaMinus:
            return {h(i), v(i), h(j), v(j), -1, false};
    }
    throw std::invalid_argument("unknown label");
}

FockState create_pair(const FockState &s, const Mode &a, const Mode &b) {
    return create(create(s, a), b);
}

// Numeric singlet creation operator (h_i v_j - v_i h_j)/sqrt(2) applied to a state.
FockState apply_singlet(const FockState &s, int i, int j) {
    return (create_pair(s, h(i), v(j)) - create_pair(s, v(i), h(j))) * (1 / std::sqrt(2.0));
}

}  // namespace

OperatorPolynomial qdh::bell_poly(BellLabel label, int i, int j) {
    check_paths(i, j);
    auto s = shape_of(label, i, j);
    RingElement c = s.halved ? RingElement(mpq_class(1, 2)) : RingElement::inv_sqrt2();
    return OperatorPolynomial::from_terms({
        {{s.a1, s.a2}, c},
        {{s.b1, s.b2}, s.sign > 0 ? c : -c},
    });
}

FockState qdh::bell(BellLabel label, int i, int j) {
    check_paths(i, j);
    auto s = shape_of(label, i, j);
    double c = s.halved ? 0.5 : 1 / std::sqrt(2.0);
    auto vac = vacuum();
    return create_pair(vac, s.a1, s.a2) * c + create_pair(vac, s.b1, s.b2) * (c * s.sign);
}

std::vector<Sector> qdh::spdc_single_pass(const SourceParams &params, int i, int j) {
    params.validate();
    auto a = singlet_op(i, j);
    std::vector<Sector> out;
    OperatorPolynomial power = OperatorPolynomial::one();
    mpz_class factorial = 1;
    for (int k = 0; k <= params.max_pairs; k++) {
        if (k > 0) {
            power = power * a;
            factorial *= k;
        }
        out.push_back({k, std::pow(params.p, k / 2.0), power.scaled(RingElement(mpq_class(1, factorial)))});
    }
    return out;
}

std::vector<Sector> qdh::spdc_double_pass(const SourceParams &params) {
    auto first = spdc_single_pass(params, 1, 2);
    auto second = spdc_single_pass(params, 3, 4);
    std::vector<Sector> out;
    for (int k = 0; k <= params.max_pairs; k++) {
        OperatorPolynomial poly;
        for (int a = 0; a <= k; a++) {
            poly = poly + first[a].poly * second[k - a].poly;
        }
        out.push_back({k, std::pow(params.p, k / 2.0), std::move(poly)});
    }
    return out;
}

std::vector<double> qdh::sector_probabilities(const SourceParams &params) {
    auto sectors = spdc_double_pass(params);
    std::vector<double> out;
    double total = 0;
    for (const auto &s : sectors) {
        out.push_back(s.weight * s.weight * exact_norm_squared(s.poly).to_double());
        total += out.back();
    }
    for (auto &x : out) {
        x /= total;
    }
    return out;
}

OperatorPolynomial qdh::theta_poly() {
    auto a12 = singlet_op(1, 2);
    auto a34 = singlet_op(3, 4);
    RingElement half(mpq_class(1, 2));
    return a12 * a34 + (a12 * a12).scaled(half) + (a34 * a34).scaled(half);
}

FockState qdh::theta_unnormalized() {
    auto vac = vacuum();
    return apply_singlet(apply_singlet(vac, 3, 4), 1, 2) + apply_singlet(apply_singlet(vac, 1, 2), 1, 2) * 0.5 +
           apply_singlet(apply_singlet(vac, 3, 4), 3, 4) * 0.5;
}

FockState qdh::theta() {
    return theta_unnormalized().normalized();
}

std::vector<DecompositionTerm> qdh::theta_decomposition_terms() {
    using L = BellLabel;
    return {
        {+1, L::PhiPlus, L::PhiPlus},         {-1, L::PhiMinus, L::PhiMinus},
        {-1, L::PsiPlus, L::PsiPlus},         {+1, L::PsiMinus, L::PsiMinus},
        {+1, L::GammaPlus, L::UpsilonPlus},   {+1, L::GammaMinus, L::UpsilonMinus},
        {+1, L::UpsilonPlus, L::GammaPlus},   {+1, L::UpsilonMinus, L::GammaMinus},
        {-1, L::OmegaPlus, L::OmegaPlus},     {-1, L::OmegaMinus, L::OmegaMinus},
    };
}

OperatorPolynomial qdh::decomposition_rhs_poly(std::span<const DecompositionTerm> terms) {
    OperatorPolynomial out;
    for (const auto &t : terms) {
        out = out + (bell_poly(t.first, 1, 3) * bell_poly(t.second, 2, 4)).scaled(t.sign);
    }
    return out;
}

RingElement qdh::verify_decomposition(std::span<const DecompositionTerm> terms) {
    auto lhs = theta_poly();
    auto rhs = decomposition_rhs_poly(terms);
    if (lhs.is_zero() || rhs.is_zero() || lhs.size() != rhs.size()) {
        throw NotProportional();
    }
    const auto &[mono, coeff] = *lhs.terms().begin();
    auto r = rhs.coefficient(mono);
    if (r.is_zero()) {
        throw NotProportional();
    }
    RingElement c = coeff / r;
    if (!(rhs.scaled(c) == lhs)) {
        throw NotProportional();
    }
    return c;
}

RingElement qdh::verify_decomposition() {
    auto terms = theta_decomposition_terms();
    return verify_decomposition(terms);
}

std::map<BellLabel, RingElement> qdh::label_probabilities() {
    auto t = theta_poly();
    RingElement inv_norm = exact_norm_squared(t).inverse();
    std::map<BellLabel, RingElement> out;
    for (auto first : kAllBellLabels) {
        RingElement total;
        auto f = bell_poly(first, 1, 3);
        for (auto second : kAllBellLabels) {
            auto amp = exact_inner(f * bell_poly(second, 2, 4), t);
            total += amp * amp;
        }
        out[first] = total * inv_norm;
    }
    return out;
}

std::map<GbaClass, RingElement> qdh::class_probabilities() {
    std::map<GbaClass, RingElement> out;
    for (auto klass : kAllGbaClasses) {
        out[klass] = RingElement();
    }
    for (const auto &[label, prob] : label_probabilities()) {
        out[class_of(label)] += prob;
    }
    return out;
}
