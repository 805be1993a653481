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

#ifndef QDH_ANALYSIS_H
#define QDH_ANALYSIS_H

#include <array>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qdh/fock.h"
#include "qdh/gba.h"
#include "qdh/protocol.h"

namespace qdh {

/// Largest pair count for which ensembles are built as explicit density matrices.
constexpr int kMaxExactPairs = 3;

using Prior = std::array<double, 2>;
constexpr Prior kUniformPrior{0.5, 0.5};

/// Pair counts and hidden-bit prior of a security evaluation. `m` counts the
/// pairs from the one-photon-per-path set.
struct AnalysisParams {
    int n = 1;
    int m = 1;
    Prior prior = kUniformPrior;

    void validate() const;
};

/// Product-state branch of a mixture: one pure state per pair slot.
struct Branch {
    double weight;
    std::vector<FockState> slots;
};
using Ensemble = std::vector<Branch>;

Ensemble pure_ensemble(const FockState &state);

/// Pair states the sharers receive for hidden bit `bit`: every combination of
/// the hider's click outcomes on n pairs whose Class1 count has parity `bit`,
/// weighted by the conditioned i.i.d. outcome law.
Ensemble hiding_ensemble(int bit, int n, const GeneralizedBellAnalyzer &analyzer = GeneralizedBellAnalyzer());

/// Density matrix of the hiding ensemble in the 10^n product basis of the
/// ten-label states on paths (2,4). Throws std::invalid_argument("n ≤ 3 for
/// exact analysis") for larger n.
DensityMatrix hiding_density_matrix(int bit, int n, const GeneralizedBellAnalyzer &analyzer = GeneralizedBellAnalyzer());

/// Same basis as hiding_density_matrix, built branch by branch from an ensemble.
DensityMatrix density_in_label_basis(const Ensemble &ensemble);

/// Both ensembles in a shared Fock product basis (union of supports).
std::pair<DensityMatrix, DensityMatrix> density_pair(const Ensemble &e0, const Ensemble &e1);

/// (1/2) sum |eig(r0 - r1)|. Throws std::invalid_argument("basis mismatch").
double trace_distance(const DensityMatrix &r0, const DensityMatrix &r1);

/// Minimum error of any single measurement guessing b from prior-weighted states.
double helstrom_error(const DensityMatrix &r0, const DensityMatrix &r1, const Prior &prior);

/// Upper bound on I(b:M) for every measurement M: H(prior) - 2 P_e, where P_e
/// is the Helstrom error. Follows from h(x) >= 2 min(x, 1-x).
double information_bound(const DensityMatrix &r0, const DensityMatrix &r1, const Prior &prior);

/// Shannon entropy in bits. Throws std::invalid_argument on negative or
/// unnormalized (beyond 1e-9) input.
double entropy(std::span<const double> dist);
/// I(X:Y) in bits from a joint table joint[x][y].
double mutual_information(const std::vector<std::vector<double>> &joint);

/// H(b1) / 2^(m-1). Throws std::invalid_argument("bound undefined; no S1 pairs") for m < 1.
double security_bound(int m, std::span<const double> prior);

struct StrategyResult {
    std::string strategy;
    std::vector<std::string> transcripts;
    /// joint[t] = {P(b=0, t), P(b=1, t)}
    std::vector<std::array<double, 2>> joint;
    double mutual_information = 0;
    double bound = 0;
};

/// Both parties count photons per polarization on every slot; the transcript
/// is the full list of counts, scored by exact Bayes over the ensembles.
StrategyResult local_count_strategy(const Ensemble &e0, const Ensemble &e1, const Prior &prior);
/// The protocol's ensembles for n pairs with a uniform prior.
StrategyResult local_count_strategy(int n);

/// Authorized decoding: the pairs are brought together and measured with the
/// analyzer on paths (2,4); the transcript is the Class1 parity. Not LOCC.
StrategyResult joint_gba_strategy(const Ensemble &e0, const Ensemble &e1, const Prior &prior,
                                  const GeneralizedBellAnalyzer &analyzer = GeneralizedBellAnalyzer());
StrategyResult joint_gba_strategy(int n);

struct OmegaGuess {
    int sign;           // +1 or -1
    int alice_outcome;  // +1 or -1
    int bob_outcome;    // +1 or -1
    int transcript_bits;
};

/// Two-round LOCC discrimination of Omega+ from Omega- on paths (2,4). Alice
/// measures {(|hv>±|0>)/sqrt2} on path 2 and announces the sign; Bob measures
/// {(|0>±|hv>)/sqrt2} on path 4; the guess is the product of the two signs.
/// The guess is meaningless for inputs outside the promise.
OmegaGuess locc_distinguish_omega(const FockState &state, std::mt19937_64 &rng);

/// 1 / s1_fraction. Needs at least 1e4 drawn pairs and a nonzero S1 count.
double overhead_factor(const SessionAggregate &stats);

}  // namespace qdh

#endif
