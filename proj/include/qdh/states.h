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

#ifndef QDH_STATES_H
#define QDH_STATES_H

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "qdh/fock.h"
#include "qdh/labels.h"
#include "qdh/op_poly.h"
#include "qdh/ring.h"

namespace qdh {

/// Down-conversion source settings. `p` is the pair-production probability per
/// pump pass; `max_pairs` is the highest number of pairs kept per expansion.
/// Sectors beyond `max_pairs` are never constructed.
struct SourceParams {
    double p = 0.01;
    int max_pairs = 2;

    /// Throws std::invalid_argument unless 0 < p <= 0.1 and 2 <= max_pairs <= 4.
    void validate() const;
};

/// One photon-pair sector of a truncated expansion: amplitude weight
/// p^(pairs/2) times an exact unnormalized polynomial.
struct Sector {
    int pairs;
    double weight;
    OperatorPolynomial poly;
};

/// Exact normalized polynomial of a basis state on paths (i, j).
OperatorPolynomial bell_poly(BellLabel label, int i, int j);

/// Normalized basis state on paths (i, j), built with numeric creation
/// operators. Throws std::invalid_argument when i == j.
FockState bell(BellLabel label, int i, int j);

/// 1 + sqrt(p) a_ij + (sqrt(p) a_ij)^2 / 2 + ..., one Sector per pair count.
std::vector<Sector> spdc_single_pass(const SourceParams &params, int i, int j);

/// Product of the (1,2) and (3,4) passes regrouped by total pair count.
std::vector<Sector> spdc_double_pass(const SourceParams &params);

/// Normalized probabilities of each double-pass sector (vacuum, one pair, ...).
std::vector<double> sector_probabilities(const SourceParams &params);

/// a12 a34 + a12^2/2 + a34^2/2, the unnormalized four-photon component.
OperatorPolynomial theta_poly();
/// The same state built with numeric ladder operators, unnormalized (norm^2 = 5/2).
FockState theta_unnormalized();
FockState theta();

/// sign * first(1,3) ⊗ second(2,4).
struct DecompositionTerm {
    int sign;
    BellLabel first;
    BellLabel second;
};

/// The ten signed product terms expressing the four-photon state in the
/// basis of paths (1,3) ⊗ (2,4).
std::vector<DecompositionTerm> theta_decomposition_terms();
OperatorPolynomial decomposition_rhs_poly(std::span<const DecompositionTerm> terms);

struct NotProportional : std::domain_error {
    NotProportional() : std::domain_error("not proportional") {
    }
};

/// Returns the exact c with theta_poly() == c * rhs, or throws NotProportional.
RingElement verify_decomposition(std::span<const DecompositionTerm> terms);
RingElement verify_decomposition();

/// Probability of each (1,3) label when the normalized four-photon state is
/// measured in the product basis of (1,3) ⊗ (2,4). Exact.
std::map<BellLabel, RingElement> label_probabilities();
std::map<GbaClass, RingElement> class_probabilities();

}  // namespace qdh

#endif
