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


#include "qdh/op_poly.h"

#include <random>

#include "gtest/gtest.h"

using namespace qdh;

namespace {

OperatorPolynomial random_poly(std::mt19937_64 &rng) {
    std::vector<Mode> modes{h(1), v(1), h(2), v(2)};
    std::uniform_int_distribution<int> mode(0, 3);
    std::uniform_int_distribution<int> len(0, 3);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    std::vector<std::pair<Monomial, RingElement>> terms;
    for (int t = 0; t < 4; t++) {
        Monomial m;
        int k = len(rng);
        for (int i = 0; i < k; i++) {
            m.push_back(modes[mode(rng)]);
        }
        terms.push_back({m, RingElement(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)))});
    }
    return OperatorPolynomial::from_terms(terms);
}

}  // namespace

TEST(op_poly, canonical_form) {
    auto p = OperatorPolynomial::from_terms({
        {{v(2), h(1)}, RingElement(1)},
        {{h(1), v(2)}, RingElement(2)},
        {{h(3)}, RingElement(0)},
    });
    ASSERT_EQ(p.size(), 1u);
    ASSERT_EQ(p.coefficient({h(1), v(2)}), RingElement(3));
    ASSERT_EQ(p.coefficient({h(3)}), RingElement(0));
    std::vector<std::pair<Monomial, RingElement>> again(p.terms().begin(), p.terms().end());
    ASSERT_EQ(OperatorPolynomial::from_terms(again), p);
    ASSERT_TRUE((p - p).is_zero());
}

TEST(op_poly, commuting_product) {
    auto a = OperatorPolynomial::creation(h(1));
    auto b = OperatorPolynomial::creation(v(2));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b).pow(2), a * a + (a * b).scaled(2) + b * b);
    ASSERT_EQ(a.pow(0), OperatorPolynomial::one());
    ASSERT_EQ(poly_mul(a, b), a * b);
    ASSERT_TRUE(poly_equal(a * b, b * a));
    ASSERT_EQ((a * a * b).str(), "h1^2v2");
}

TEST(op_poly, singlet_operator) {
    auto s = singlet_op(1, 2);
    ASSERT_EQ(s.coefficient({h(1), v(2)}), RingElement::inv_sqrt2());
    ASSERT_EQ(s.coefficient({v(1), h(2)}), -RingElement::inv_sqrt2());
    ASSERT_EQ(exact_norm_squared(s), RingElement(1));
    ASSERT_THROW(singlet_op(2, 2), std::invalid_argument);
    ASSERT_EQ(s.str(), "(1/2)√2·h1v2 - (1/2)√2·v1h2");
}

TEST(op_poly, exact_inner_matches_numeric_gram) {
    std::mt19937_64 rng(31);
    std::vector<OperatorPolynomial> polys;
    for (int k = 0; k < 12; k++) {
        polys.push_back(random_poly(rng));
    }
    for (const auto &p : polys) {
        for (const auto &q : polys) {
            double exact = exact_inner(p, q).to_double();
            auto numeric = inner(apply_to_vacuum(p), apply_to_vacuum(q));
            ASSERT_NEAR(numeric.real(), exact, 1e-10);
            ASSERT_NEAR(numeric.imag(), 0, 1e-12);
        }
    }
}

TEST(op_poly, two_pair_norms) {
    auto a12 = singlet_op(1, 2);
    auto a34 = singlet_op(3, 4);
    auto half = RingElement::rational("1/2");
    ASSERT_EQ(exact_norm_squared(a12.pow(2).scaled(half)), RingElement::rational("3/4"));
    ASSERT_EQ(exact_norm_squared(a12 * a34), RingElement(1));
    ASSERT_EQ(exact_inner(a12 * a34, a12.pow(2)), RingElement(0));
    auto theta = a12 * a34 + a12.pow(2).scaled(half) + a34.pow(2).scaled(half);
    ASSERT_EQ(exact_norm_squared(theta), RingElement::rational("5/2"));
}

TEST(op_poly, apply_to_vacuum_weights) {
    auto p = OperatorPolynomial::creation(h(1)).pow(2);
    auto state = apply_to_vacuum(p);
    ASSERT_NEAR(state.amplitude(OccupationVector{{h(1), 2}}).real(), std::sqrt(2.0), 1e-15);
    ASSERT_NEAR(apply_to_vacuum(OperatorPolynomial::one()).amplitude(OccupationVector()).real(), 1, 0);
    ASSERT_EQ(monomial_str({h(1), h(1), v(3)}), "h1^2v3");
}
