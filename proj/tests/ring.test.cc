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


#include "qdh/ring.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace qdh;

namespace {

RingElement random_element(std::mt19937_64 &rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 12);
    return RingElement(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

}  // namespace

TEST(ring, construction_and_text) {
    ASSERT_EQ(RingElement(3).str(), "3");
    ASSERT_EQ(RingElement::rational("2/4").str(), "1/2");
    ASSERT_EQ(RingElement::sqrt2().str(), "√2");
    ASSERT_EQ(RingElement::inv_sqrt2().str(), "(1/2)√2");
    ASSERT_EQ(RingElement(mpq_class(1), mpq_class(2)).str(), "(1 + 2√2)");
    ASSERT_EQ(RingElement(0).str(), "0");
    ASSERT_TRUE(RingElement(0).is_zero());
    ASSERT_TRUE(RingElement(5).is_rational());
    ASSERT_FALSE(RingElement::sqrt2().is_rational());
}

TEST(ring, sqrt2_identities) {
    auto r = RingElement::sqrt2();
    ASSERT_EQ(r * r, RingElement(2));
    ASSERT_EQ(RingElement::inv_sqrt2() * RingElement::inv_sqrt2(), RingElement::rational("1/2"));
    ASSERT_EQ(r.inverse(), RingElement::inv_sqrt2());
    ASSERT_NEAR(r.to_double(), std::sqrt(2.0), 1e-15);
}

TEST(ring, field_axioms_randomized) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 500; k++) {
        auto x = random_element(rng);
        auto y = random_element(rng);
        auto z = random_element(rng);
        ASSERT_EQ(x + y, y + x);
        ASSERT_EQ(x * y, y * x);
        ASSERT_EQ((x + y) + z, x + (y + z));
        ASSERT_EQ((x * y) * z, x * (y * z));
        ASSERT_EQ(x * (y + z), x * y + x * z);
        ASSERT_EQ(x - x, RingElement(0));
        ASSERT_EQ(x + (-x), RingElement(0));
        ASSERT_EQ(x * RingElement(1), x);
        if (!x.is_zero()) {
            ASSERT_EQ(x * x.inverse(), RingElement(1));
            ASSERT_EQ((y / x) * x, y);
        }
        ASSERT_NEAR((x * y).to_double(), x.to_double() * y.to_double(), 1e-9);
    }
}

TEST(ring, exact_sign_agrees_with_floating_point) {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 2000; k++) {
        auto x = random_element(rng);
        double d = x.to_double();
        if (x.is_zero()) {
            ASSERT_EQ(x.sign(), 0);
        } else if (std::abs(d) > 1e-9) {
            ASSERT_EQ(x.sign(), d > 0 ? 1 : -1);
        }
    }
    // Convergents of sqrt2 from above and below.
    RingElement close(mpq_class(-99, 70), mpq_class(1));
    ASSERT_EQ(close.sign(), -1);
    RingElement closer(mpq_class(-1393, 985), mpq_class(1));
    ASSERT_EQ(closer.sign(), 1);
}

TEST(ring, zero_has_no_inverse) {
    ASSERT_THROW(RingElement(0).inverse(), std::domain_error);
    ASSERT_THROW(RingElement(1) / RingElement(0), std::domain_error);
}

TEST(ring, in_place_add) {
    RingElement acc;
    for (int k = 0; k < 10; k++) {
        acc += RingElement::rational("1/10");
    }
    ASSERT_EQ(acc, RingElement(1));
}
