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

#ifndef QDH_OP_POLY_H
#define QDH_OP_POLY_H

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdh/fock.h"
#include "qdh/ring.h"

namespace qdh {

/// Sorted multiset of creation operators. Creation operators commute, so the
/// sorted form is canonical.
using Monomial = std::vector<Mode>;

/// Exact polynomial in commuting creation operators with Q[sqrt(2)] coefficients.
/// Zero coefficients are never stored. This is the symbolic oracle against
/// which the numeric Fock engine is checked; it never represents annihilators.
class OperatorPolynomial {
   public:
    using Terms = std::map<Monomial, RingElement>;

    OperatorPolynomial() = default;

    /// Canonicalizes arbitrary (unsorted, repeated, zero) terms.
    static OperatorPolynomial from_terms(const std::vector<std::pair<Monomial, RingElement>> &terms);
    static OperatorPolynomial constant(const RingElement &c);
    static OperatorPolynomial one();
    static OperatorPolynomial creation(const Mode &mode);

    const Terms &terms() const {
        return terms_;
    }
    size_t size() const {
        return terms_.size();
    }
    bool is_zero() const {
        return terms_.empty();
    }
    RingElement coefficient(const Monomial &monomial) const;

    OperatorPolynomial operator+(const OperatorPolynomial &o) const;
    OperatorPolynomial operator-(const OperatorPolynomial &o) const;
    OperatorPolynomial operator*(const OperatorPolynomial &o) const;
    OperatorPolynomial scaled(const RingElement &c) const;
    OperatorPolynomial pow(int k) const;

    bool operator==(const OperatorPolynomial &o) const {
        return terms_ == o.terms_;
    }

    /// "1/2·h1v2h3v4 - 1/2·h1v2v3h4 + ..." with repeated factors as "h1^2".
    std::string str() const;

   private:
    Terms terms_;
};

/// Singlet creation operator (h_i v_j - v_i h_j)/sqrt(2). Throws
/// std::invalid_argument("degenerate singlet") when i == j.
OperatorPolynomial singlet_op(int i, int j);

OperatorPolynomial poly_mul(const OperatorPolynomial &p, const OperatorPolynomial &q);
bool poly_equal(const OperatorPolynomial &p, const OperatorPolynomial &q);

/// Exact <vac| p^dag q |vac> = sum over shared monomials of c_p c_q prod(count!).
RingElement exact_inner(const OperatorPolynomial &p, const OperatorPolynomial &q);
RingElement exact_norm_squared(const OperatorPolynomial &p);

/// Evaluates p|vac>: each monomial becomes a ket with amplitude
/// coeff * sqrt(prod count!), converted to floating point only here.
FockState apply_to_vacuum(const OperatorPolynomial &p);

std::string monomial_str(const Monomial &m);

}  // namespace qdh

#endif
