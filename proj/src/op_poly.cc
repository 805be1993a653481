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

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace qdh;

namespace {

void accumulate(OperatorPolynomial::Terms &terms, Monomial key, const RingElement &c) {
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms.emplace(std::move(key), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms.erase(it);
        }
    }
}

OccupationVector to_occupation(const Monomial &m) {
    OccupationVector out;
    for (const auto &mode : m) {
        out = out.with_count(mode, out.count(mode) + 1);
    }
    return out;
}

mpz_class factorial_product(const Monomial &m) {
    mpz_class f = 1;
    size_t k = 0;
    while (k < m.size()) {
        size_t run = 1;
        while (k + run < m.size() && m[k + run] == m[k]) {
            run++;
        }
        for (size_t r = 2; r <= run; r++) {
            f *= static_cast<unsigned long>(r);
        }
        k += run;
    }
    return f;
}

}  // namespace

OperatorPolynomial OperatorPolynomial::from_terms(const std::vector<std::pair<Monomial, RingElement>> &terms) {
    OperatorPolynomial out;
    for (const auto &[mono, c] : terms) {
        Monomial key = mono;
        std::sort(key.begin(), key.end());
        accumulate(out.terms_, std::move(key), c);
    }
    return out;
}

OperatorPolynomial OperatorPolynomial::constant(const RingElement &c) {
    return from_terms({{Monomial{}, c}});
}

OperatorPolynomial OperatorPolynomial::one() {
    return constant(1);
}

OperatorPolynomial OperatorPolynomial::creation(const Mode &mode) {
    return from_terms({{Monomial{mode}, 1}});
}

RingElement OperatorPolynomial::coefficient(const Monomial &monomial) const {
    auto it = terms_.find(monomial);
    return it == terms_.end() ? RingElement() : it->second;
}

OperatorPolynomial OperatorPolynomial::operator+(const OperatorPolynomial &o) const {
    OperatorPolynomial out = *this;
    for (const auto &[mono, c] : o.terms_) {
        accumulate(out.terms_, mono, c);
    }
    return out;
}

OperatorPolynomial OperatorPolynomial::operator-(const OperatorPolynomial &o) const {
    return *this + o.scaled(-1);
}

OperatorPolynomial OperatorPolynomial::operator*(const OperatorPolynomial &o) const {
    OperatorPolynomial out;
    for (const auto &[m1, c1] : terms_) {
        for (const auto &[m2, c2] : o.terms_) {
            Monomial key;
            key.reserve(m1.size() + m2.size());
            std::merge(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(key));
            accumulate(out.terms_, std::move(key), c1 * c2);
        }
    }
    return out;
}

OperatorPolynomial OperatorPolynomial::scaled(const RingElement &c) const {
    OperatorPolynomial out;
    for (const auto &[mono, coeff] : terms_) {
        accumulate(out.terms_, mono, coeff * c);
    }
    return out;
}

OperatorPolynomial OperatorPolynomial::pow(int k) const {
    if (k < 0) {
        throw std::invalid_argument("negative polynomial power");
    }
    OperatorPolynomial out = one();
    for (int r = 0; r < k; r++) {
        out = out * *this;
    }
    return out;
}

std::string qdh::monomial_str(const Monomial &m) {
    if (m.empty()) {
        return "1";
    }
    std::string out;
    size_t k = 0;
    while (k < m.size()) {
        size_t run = 1;
        while (k + run < m.size() && m[k + run] == m[k]) {
            run++;
        }
        out += m[k].str();
        if (run > 1) {
            out += "^" + std::to_string(run);
        }
        k += run;
    }
    return out;
}

std::string OperatorPolynomial::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[mono, c] : terms_) {
        bool negative = c.sign() < 0;
        RingElement mag = negative ? -c : c;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (mono.empty()) {
            out += mag.str();
        } else if (mag == RingElement(1)) {
            out += monomial_str(mono);
        } else {
            out += mag.str() + "·" + monomial_str(mono);
        }
    }
    return out;
}

OperatorPolynomial qdh::singlet_op(int i, int j) {
    if (i == j) {
        throw std::invalid_argument("degenerate singlet");
    }
    RingElement r = RingElement::inv_sqrt2();
    return OperatorPolynomial::from_terms({
        {{h(i), v(j)}, r},
        {{v(i), h(j)}, -r},
    });
}

OperatorPolynomial qdh::poly_mul(const OperatorPolynomial &p, const OperatorPolynomial &q) {
    return p * q;
}

bool qdh::poly_equal(const OperatorPolynomial &p, const OperatorPolynomial &q) {
    return p == q;
}

RingElement qdh::exact_inner(const OperatorPolynomial &p, const OperatorPolynomial &q) {
    RingElement total;
    for (const auto &[mono, c] : p.terms()) {
        auto it = q.terms().find(mono);
        if (it != q.terms().end()) {
            total += c * it->second * RingElement(mpq_class(factorial_product(mono)));
        }
    }
    return total;
}

RingElement qdh::exact_norm_squared(const OperatorPolynomial &p) {
    return exact_inner(p, p);
}

FockState qdh::apply_to_vacuum(const OperatorPolynomial &p) {
    FockState::Map out;
    for (const auto &[mono, c] : p.terms()) {
        double weight = std::sqrt(factorial_product(mono).get_d());
        out[to_occupation(mono)] += c.to_double() * weight;
    }
    return FockState(std::move(out));
}
