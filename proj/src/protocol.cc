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

#include "qdh/protocol.h"

#include <stdexcept>

#include "qdh/op_poly.h"

using namespace qdh;

PairSource::PairSource(SourceParams params, GeneralizedBellAnalyzer analyzer)
    : params_(params), analyzer_(std::move(analyzer)) {
    params_.validate();
    sector_probs_ = qdh::sector_probabilities(params_);
    auto sectors = spdc_double_pass(params_);
    for (size_t k = 0; k < sectors.size(); k++) {
        auto state = apply_to_vacuum(sectors[k].poly).normalized();
        sector_branches_.push_back(analyzer_.branches(state, kHiderPaths));
        for (const auto &b : sector_branches_.back()) {
            if (b.klass) {
                GbaBranch weighted = b;
                weighted.probability *= sector_probs_[k];
                herald_prob_ += weighted.probability;
                herald_branches_.push_back(std::move(weighted));
            }
        }
    }
    if (herald_prob_ <= 0) {
        throw std::logic_error("source never heralds");
    }
    for (auto &b : herald_branches_) {
        b.probability /= herald_prob_;
    }
}

std::variant<PairRecord, NoHerald> PairSource::generate_pair(std::mt19937_64 &rng) const {
    std::discrete_distribution<size_t> pick_sector(sector_probs_.begin(), sector_probs_.end());
    size_t k = pick_sector(rng);
    auto outcome = sample_branch(sector_branches_[k], rng);
    if (!outcome.heralded()) {
        return NoHerald{1, outcome.pattern.total()};
    }
    return PairRecord{*outcome.klass, outcome.pattern, outcome.posterior, 1};
}

PairRecord PairSource::next_heralded(std::mt19937_64 &rng) const {
    std::geometric_distribution<uint64_t> failures(herald_prob_);
    uint64_t pulses = failures(rng) + 1;
    auto outcome = sample_branch(herald_branches_, rng);
    return PairRecord{*outcome.klass, outcome.pattern, outcome.posterior, pulses};
}

size_t HidingInstance::class1_count() const {
    size_t c = 0;
    for (const auto &p : pairs) {
        c += p.klass == GbaClass::Class1;
    }
    return c;
}

bool HidingInstance::parity_holds() const {
    return static_cast<int>(class1_count() % 2) == secret;
}

HidingInstance qdh::encode(int secret, int n, const PairSource &source, std::mt19937_64 &rng,
                           const DrawObserver &observer) {
    if (secret != 0 && secret != 1) {
        throw std::invalid_argument("secret must be a bit");
    }
    if (n < 1) {
        throw std::invalid_argument("n must be >= 1");
    }
    HidingInstance out;
    out.secret = secret;
    while (true) {
        out.pairs.clear();
        for (int k = 0; k < n; k++) {
            out.pairs.push_back(source.next_heralded(rng));
            if (observer) {
                observer(out.pairs.back());
            }
        }
        if (out.parity_holds()) {
            return out;
        }
    }
}

Share::Share(std::shared_ptr<const HidingInstance> joint, int path) : joint_(std::move(joint)), path_(path) {
    if (!joint_) {
        throw std::invalid_argument("share needs an instance");
    }
}

DensityMatrix Share::reduced(size_t pair) const {
    return reduced_density(joint_->pairs.at(pair).pair_state, modes());
}

Shares qdh::distribute(std::shared_ptr<const HidingInstance> instance) {
    return Shares{AliceShare(instance), BobShare(instance)};
}

Shares qdh::distribute(HidingInstance instance) {
    return distribute(std::make_shared<const HidingInstance>(std::move(instance)));
}

std::vector<FockState> qdh::merge(const AliceShare &alice, const BobShare &bob) {
    if (alice.joint() != bob.joint()) {
        throw std::invalid_argument("shares come from different instances");
    }
    std::vector<FockState> out;
    for (const auto &p : alice.joint()->pairs) {
        out.push_back(p.pair_state);
    }
    return out;
}

DecodeResult qdh::decode_detailed(const std::optional<AliceShare> &alice, const std::optional<BobShare> &bob,
                                  const GeneralizedBellAnalyzer &analyzer, std::mt19937_64 &rng) {
    if (!alice || !bob) {
        throw std::logic_error("quantum channel required");
    }
    DecodeResult out{0, {}, {}};
    size_t class1 = 0;
    for (const auto &state : merge(*alice, *bob)) {
        auto outcome = analyzer.measure(state, kSharerPaths, rng);
        if (!outcome.heralded()) {
            throw std::logic_error("pair did not deliver two photons to the decoder");
        }
        class1 += *outcome.klass == GbaClass::Class1;
        out.classes.push_back(*outcome.klass);
        out.clicks.push_back(outcome.pattern);
    }
    out.bit = static_cast<int>(class1 % 2);
    return out;
}

int qdh::decode(const std::optional<AliceShare> &alice, const std::optional<BobShare> &bob,
                const GeneralizedBellAnalyzer &analyzer, std::mt19937_64 &rng) {
    return decode_detailed(alice, bob, analyzer, rng).bit;
}

void SessionConfig::validate() const {
    if (n < 1) {
        throw std::invalid_argument("n must be >= 1");
    }
    if (secret != 0 && secret != 1) {
        throw std::invalid_argument("secret must be 0 or 1");
    }
    if (!(p > 0 && p <= 0.1)) {
        throw std::invalid_argument("p must lie in (0, 0.1]");
    }
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
}

namespace {

double s1_share(const std::array<uint64_t, 10> &label_histogram, uint64_t pairs_drawn) {
    if (pairs_drawn == 0) {
        return 0;
    }
    uint64_t s1 = 0;
    for (auto label : kAllBellLabels) {
        if (set_of(label) == BellSet::S1) {
            s1 += label_histogram[index_of(label)];
        }
    }
    return static_cast<double>(s1) / static_cast<double>(pairs_drawn);
}

}  // namespace

double SessionStats::s1_fraction_estimate() const {
    return s1_share(label_histogram, pairs_drawn);
}

void SessionAggregate::add(const SessionStats &s) {
    trials += 1;
    successes += s.decoded_bit == s.secret;
    pulses_total += s.pulses_total;
    pairs_drawn += s.pairs_drawn;
    pairs_rejected += s.pairs_rejected;
    for (size_t k = 0; k < class_histogram.size(); k++) {
        class_histogram[k] += s.class_histogram[k];
    }
    for (size_t k = 0; k < label_histogram.size(); k++) {
        label_histogram[k] += s.label_histogram[k];
    }
}

void SessionAggregate::merge(const SessionAggregate &o) {
    trials += o.trials;
    successes += o.successes;
    pulses_total += o.pulses_total;
    pairs_drawn += o.pairs_drawn;
    pairs_rejected += o.pairs_rejected;
    for (size_t k = 0; k < class_histogram.size(); k++) {
        class_histogram[k] += o.class_histogram[k];
    }
    for (size_t k = 0; k < label_histogram.size(); k++) {
        label_histogram[k] += o.label_histogram[k];
    }
}

double SessionAggregate::success_rate() const {
    return trials == 0 ? 0 : static_cast<double>(successes) / static_cast<double>(trials);
}

double SessionAggregate::s1_fraction() const {
    return s1_share(label_histogram, pairs_drawn);
}

double SessionAggregate::pulses_mean() const {
    return pairs_drawn == 0 ? 0 : static_cast<double>(pulses_total) / static_cast<double>(pairs_drawn);
}

uint64_t qdh::splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t qdh::trial_seed(uint64_t root, uint64_t trial, uint64_t stream) {
    return splitmix64(splitmix64(root) ^ (2 * trial + stream));
}

SessionStats qdh::run_session(int n, int secret, const PairSource &source, std::mt19937_64 &rng,
                              std::mt19937_64 &diagnostics) {
    SessionStats stats;
    stats.n = n;
    stats.secret = secret;
    auto instance = encode(secret, n, source, rng, [&](const PairRecord &pair) {
        stats.pairs_drawn++;
        stats.pulses_total += pair.pulses_consumed;
        stats.class_histogram[index_of(pair.klass)]++;
        stats.label_histogram[index_of(measure_label(pair.pair_state, kSharerPaths, diagnostics))]++;
    });
    stats.pairs_rejected = stats.pairs_drawn - instance.n();
    auto shares = distribute(std::move(instance));
    stats.decoded_bit = decode(shares.alice, shares.bob, source.analyzer(), rng);
    return stats;
}

SessionReport qdh::run_sessions(const SessionConfig &config, const GbaCircuit &circuit) {
    config.validate();
    PairSource source(SourceParams{config.p, 2}, GeneralizedBellAnalyzer(circuit));
    SessionReport report;
    report.config = config;
    for (uint64_t k = 0; k < config.trials; k++) {
        std::mt19937_64 rng(trial_seed(config.seed, k, 0));
        std::mt19937_64 diagnostics(trial_seed(config.seed, k, 1));
        auto stats = run_session(config.n, config.secret, source, rng, diagnostics);
        report.aggregate.add(stats);
        if (config.keep_per_trial) {
            report.per_trial.push_back(stats);
        }
    }
    return report;
}
