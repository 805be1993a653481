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

#ifndef QDH_PROTOCOL_H
#define QDH_PROTOCOL_H

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "qdh/fock.h"
#include "qdh/gba.h"
#include "qdh/labels.h"
#include "qdh/states.h"

namespace qdh {

/// The hider analyzes paths 1 and 3; the sharers receive paths 2 (Alice) and 4 (Bob).
constexpr AnalyzerPaths kHiderPaths{1, 3};
constexpr AnalyzerPaths kSharerPaths{2, 4};
constexpr int kAlicePath = 2;
constexpr int kBobPath = 4;

/// A heralded pair on paths (2,4) as recorded by the hider.
struct PairRecord {
    GbaClass klass;
    ClickPattern click;
    FockState pair_state;
    uint64_t pulses_consumed;
};

/// A pulse that did not deliver exactly two photons to the hider's analyzer.
struct NoHerald {
    uint64_t pulses_consumed;
    int detected_photons;
};

/// Pulsed double-pass down-conversion source with the hider's analyzer on
/// paths (1,3). The analyzer's outcome distribution for every photon-number
/// sector is computed once at construction.
class PairSource {
   public:
    explicit PairSource(SourceParams params, GeneralizedBellAnalyzer analyzer = GeneralizedBellAnalyzer());

    const SourceParams &params() const {
        return params_;
    }
    const GeneralizedBellAnalyzer &analyzer() const {
        return analyzer_;
    }
    const std::vector<double> &sector_probabilities() const {
        return sector_probs_;
    }
    /// Probability that one pulse is heralded.
    double herald_probability() const {
        return herald_prob_;
    }

    /// Simulates a single pulse: draws the photon-number sector, routes the
    /// state through the analyzer, and heralds iff exactly two photons click.
    std::variant<PairRecord, NoHerald> generate_pair(std::mt19937_64 &rng) const;

    /// Pulses until the first herald. Non-heralding pulses are skipped in one
    /// geometric draw; the returned record counts every pulse consumed.
    PairRecord next_heralded(std::mt19937_64 &rng) const;

   private:
    SourceParams params_;
    GeneralizedBellAnalyzer analyzer_;
    std::vector<double> sector_probs_;
    std::vector<std::vector<GbaBranch>> sector_branches_;
    std::vector<GbaBranch> herald_branches_;
    double herald_prob_ = 0;
};

struct HidingInstance {
    int secret = 0;
    std::vector<PairRecord> pairs;

    size_t n() const {
        return pairs.size();
    }
    size_t class1_count() const;
    /// Class1 count parity equals the secret.
    bool parity_holds() const;
};

using DrawObserver = std::function<void(const PairRecord &)>;

/// Draws n heralded pairs and keeps the tuple only if its Class1 count has the
/// parity of `secret`; otherwise all n are discarded and redrawn. `observer`
/// sees every drawn pair, accepted or not.
HidingInstance encode(int secret, int n, const PairSource &source, std::mt19937_64 &rng,
                      const DrawObserver &observer = {});

/// One sharer's view of the hidden pairs. Both shares point at the same joint
/// states; a share only exposes the reduced state of its own modes.
class Share {
   public:
    Share(std::shared_ptr<const HidingInstance> joint, int path);

    int path() const {
        return path_;
    }
    std::set<Mode> modes() const {
        return path_modes(path_);
    }
    size_t size() const {
        return joint_->n();
    }
    DensityMatrix reduced(size_t pair) const;
    const std::shared_ptr<const HidingInstance> &joint() const {
        return joint_;
    }

   private:
    std::shared_ptr<const HidingInstance> joint_;
    int path_;
};

struct AliceShare : Share {
    explicit AliceShare(std::shared_ptr<const HidingInstance> joint) : Share(std::move(joint), kAlicePath) {
    }
};
struct BobShare : Share {
    explicit BobShare(std::shared_ptr<const HidingInstance> joint) : Share(std::move(joint), kBobPath) {
    }
};

struct Shares {
    AliceShare alice;
    BobShare bob;
};

Shares distribute(std::shared_ptr<const HidingInstance> instance);
Shares distribute(HidingInstance instance);

/// Joint pair states once both shares sit in one lab.
std::vector<FockState> merge(const AliceShare &alice, const BobShare &bob);

struct DecodeResult {
    int bit;
    std::vector<GbaClass> classes;
    std::vector<ClickPattern> clicks;
};

/// Measures every pair on paths (2,4) with the analyzer and returns the Class1
/// count parity. Throws std::logic_error("quantum channel required") when a
/// share is missing.
DecodeResult decode_detailed(const std::optional<AliceShare> &alice, const std::optional<BobShare> &bob,
                             const GeneralizedBellAnalyzer &analyzer, std::mt19937_64 &rng);
int decode(const std::optional<AliceShare> &alice, const std::optional<BobShare> &bob,
           const GeneralizedBellAnalyzer &analyzer, std::mt19937_64 &rng);

struct SessionConfig {
    int n = 8;
    int secret = 1;
    double p = 0.01;
    uint64_t trials = 100;
    uint64_t seed = 1;
    bool keep_per_trial = false;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

/// Statistics of one encode/distribute/decode session.
struct SessionStats {
    int n = 0;
    int secret = 0;
    int decoded_bit = 0;
    uint64_t pulses_total = 0;
    uint64_t pairs_drawn = 0;
    uint64_t pairs_rejected = 0;
    std::array<uint64_t, 3> class_histogram{};
    /// Ideal ten-label measurement of a copy of every drawn pair.
    std::array<uint64_t, 10> label_histogram{};

    double s1_fraction_estimate() const;
};

/// Order-independent sum over sessions.
struct SessionAggregate {
    uint64_t trials = 0;
    uint64_t successes = 0;
    uint64_t pulses_total = 0;
    uint64_t pairs_drawn = 0;
    uint64_t pairs_rejected = 0;
    std::array<uint64_t, 3> class_histogram{};
    std::array<uint64_t, 10> label_histogram{};

    void add(const SessionStats &s);
    void merge(const SessionAggregate &other);

    double success_rate() const;
    double s1_fraction() const;
    double pulses_mean() const;  // pulses per drawn pair
    bool operator==(const SessionAggregate &) const = default;
};

struct SessionReport {
    SessionConfig config;
    SessionAggregate aggregate;
    std::vector<SessionStats> per_trial;
};

uint64_t splitmix64(uint64_t x);
/// Seed of stream `stream` (0 = protocol, 1 = diagnostics) of trial `trial`.
uint64_t trial_seed(uint64_t root, uint64_t trial, uint64_t stream);

/// One session with explicit generators: protocol randomness from `rng`,
/// diagnostic label sampling from `diagnostics`.
SessionStats run_session(int n, int secret, const PairSource &source, std::mt19937_64 &rng,
                         std::mt19937_64 &diagnostics);

/// Deterministic given the config: trial k uses trial_seed(seed, k, 0|1).
SessionReport run_sessions(const SessionConfig &config, const GbaCircuit &circuit = GbaCircuit::standard());

}  // namespace qdh

#endif
