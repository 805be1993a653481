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
#include <stdexcept>

using namespace qdh;

RingElement::RingElement(long a) : a_(a), b_(0) {
}

RingElement::RingElement(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
}

RingElement RingElement::rational(const std::string &text) {
    mpq_class q(text);
    return RingElement(q);
}

RingElement RingElement::sqrt2() {
    return RingElement(0, 1);
}

RingElement RingElement::inv_sqrt2() {
    return RingElement(0, mpq_class(1, 2));
}

bool RingElement::is_zero() const {
    return a_ == 0 && b_ == 0;
}

RingElement RingElement::operator+(const RingElement &o) const {
    return RingElement(a_ + o.a_, b_ + o.b_);
}

RingElement RingElement::operator-(const RingElement &o) const {
    return RingElement(a_ - o.a_, b_ - o.b_);
}

RingElement RingElement::operator-() const {
    return RingElement(-a_, -b_);
}

RingElement RingElement::operator*(const RingElement &o) const {
    // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r
    return RingElement(a_ * o.a_ + 2 * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
}

RingElement RingElement::inverse() const {
    mpq_class norm = a_ * a_ - 2 * b_ * b_;
    if (norm == 0) {
        throw std::domain_error("inverse of zero ring element");
    }
    return RingElement(a_ / norm, -b_ / norm);
}

RingElement RingElement::operator/(const RingElement &o) const {
    return *this * o.inverse();
}

RingElement &RingElement::operator+=(const RingElement &o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

bool RingElement::operator==(const RingElement &o) const {
    return a_ == o.a_ && b_ == o.b_;
}

int RingElement::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sa == 0) {
        return sb;
    }
    if (sb == 0 || sa == sb) {
        return sa;
    }
    // Opposite signs: compare a^2 against 2 b^2.
    mpq_class diff = a_ * a_ - 2 * b_ * b_;
    return sgn(diff) * sa;
}

double RingElement::to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(2.0);
}

namespace {

std::string sqrt2_part(const mpq_class &b) {
    if (b == 1) {
        return "√2";
    }
    if (b == -1) {
        return "-√2";
    }
    if (b.get_den() == 1) {
        return b.get_str() + "√2";
    }
    return "(" + b.get_str() + ")√2";
}

}  // namespace

std::string RingElement::str() const {
    if (b_ == 0) {
        return a_.get_str();
    }
    if (a_ == 0) {
        return sqrt2_part(b_);
    }
    mpq_class mag = abs(b_);
    return "(" + a_.get_str() + (b_ < 0 ? " - " : " + ") + sqrt2_part(mag) + ")";
}
