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

#ifndef QDH_RING_H
#define QDH_RING_H

#include <string>

#include <gmpxx.h>

namespace qdh {

/// Exact element a + b*sqrt(2) of Q[sqrt(2)] with arbitrary-precision rational parts.
class RingElement {
   public:
    RingElement() = default;
    RingElement(long a);  // NOLINT: implicit integer embedding is intended
    RingElement(mpq_class a, mpq_class b = 0);

    /// Parses "p/q" into a rational element.
    static RingElement rational(const std::string &text);
    static RingElement sqrt2();
    static RingElement inv_sqrt2();

    const mpq_class &a() const {
        return a_;
    }
    const mpq_class &b() const {
        return b_;
    }
    bool is_zero() const;
    bool is_rational() const {
        return b_ == 0;
    }

    RingElement operator+(const RingElement &o) const;
    RingElement operator-(const RingElement &o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement &o) const;
    /// Throws std::domain_error on zero.
    RingElement inverse() const;
    RingElement operator/(const RingElement &o) const;
    RingElement &operator+=(const RingElement &o);

    bool operator==(const RingElement &o) const;
    /// Sign of the real number a + b*sqrt(2), decided exactly.
    int sign() const;

    double to_double() const;
    /// "1/2", "-3", "(1/2)√2", "√2", "(1 + 2√2)".
    std::string str() const;

   private:
    mpq_class a_ = 0;
    mpq_class b_ = 0;
};

}  // namespace qdh

#endif
