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

#include <cmath>
#include <set>

#include "gtest/gtest.h"

using namespace qdh;

TEST(protocol, herald_probability_closed_form) {
    for (double p : {0.001, 0.01, 0.1}) {
        PairSource source(SourceParams{p, 2});
        double z = 1 + 2 * p + 2.5 * p * p;
        ASSERT_NEAR(source.herald_probability(), 2.5 * p * p / z, 1e-15);
    }
    ASSERT_THROW(PairSource(SourceParams{0.5, 2}), std::invalid_argument);
}

TEST(protocol, single_pulse_statistics) {
    double p = 0.1;
    PairSource source(SourceParams{p, 2});
    std::mt19937_64 rng(7);
    int heralds = 0;
    std::array<int, 3> photons{};
    const int pulses = 100000;
    for (int k = 0; k < pulses; k++) {
        auto r = source.generate_pair(rng);
        if (std::holds_alternative<PairRecord>(r)) {
            heralds++;
            ASSERT_EQ(std::get<PairRecord>(r).pulses_consumed, 1u);
            ASSERT_EQ(std::get<PairRecord>(r).click.total(), 2);
        } else {
            const auto &miss = std::get<NoHerald>(r);
            ASSERT_LT(miss.detected_photons, 2);
            photons[miss.detected_photons]++;
        }
    }
    double z = 1 + 2 * p + 2.5 * p * p;
    ASSERT_NEAR(heralds / double(pulses), 2.5 * p * p / z, 0.002);
    ASSERT_NEAR(photons[1] / double(pulses), 2 * p / z, 0.005);
}

TEST(protocol, heralded_class_frequencies_and_pulse_count) {
    double p = 0.01;
    PairSource source(SourceParams{p, 2});
    std::mt19937_64 rng(2024);
    std::array<int, 3> hist{};
    uint64_t pulses = 0;
    const int draws = 100000;
    for (int k = 0; k < draws; k++) {
        auto rec = source.next_heralded(rng);
        hist[index_of(rec.klass)]++;
        pulses += rec.pulses_consumed;
        ASSERT_GE(rec.pulses_consumed, 1u);
        ASSERT_EQ(classify(rec.click), rec.klass);
        ASSERT_TRUE(rec.pair_state.has_photon_number(2));
    }
    ASSERT_NEAR(hist[0] / double(draws), 0.2, 0.01);
    ASSERT_NEAR(hist[1] / double(draws), 0.2, 0.01);
    ASSERT_NEAR(hist[2] / double(draws), 0.6, 0.01);
    double expected_pulses = (1 + 2 * p + 2.5 * p * p) / (2.5 * p * p);
    ASSERT_NEAR(pulses / double(draws) / expected_pulses, 1, 0.02);
}

TEST(protocol, encode_keeps_parity) {
    PairSource source(SourceParams{});
    std::mt19937_64 rng(3);
    for (int n : {1, 2, 3, 5, 8}) {
        for (int secret : {0, 1}) {
            for (int rep = 0; rep < 20; rep++) {
                auto inst = encode(secret, n, source, rng);
                ASSERT_EQ(inst.n(), size_t(n));
                ASSERT_EQ(int(inst.class1_count() % 2), secret);
                ASSERT_TRUE(inst.parity_holds());
            }
        }
    }
    ASSERT_THROW(encode(2, 1, source, rng), std::invalid_argument);
    ASSERT_THROW(encode(0, 0, source, rng), std::invalid_argument);
}

TEST(protocol, encode_conditional_law) {
    // With P(Class1) = 1/5 per pair, two pairs with even Class1 count are both
    // Class1 with probability (1/25) / (1/25 + 16/25) = 1/17.
    PairSource source(SourceParams{});
    std::mt19937_64 rng(99);
    int both = 0;
    int class2 = 0;
    int non_class1 = 0;
    const int reps = 20000;
    uint64_t observed = 0;
    for (int k = 0; k < reps; k++) {
        auto inst = encode(0, 2, source, rng, [&](const PairRecord &) { observed++; });
        both += inst.class1_count() == 2;
        for (const auto &pr : inst.pairs) {
            if (pr.klass != GbaClass::Class1) {
                non_class1++;
                class2 += pr.klass == GbaClass::Class2;
            }
        }
    }
    ASSERT_NEAR(both / double(reps), 1.0 / 17, 0.01);
    ASSERT_NEAR(class2 / double(non_class1), 0.25, 0.01);
    // Acceptance probability of a tuple is 17/25.
    ASSERT_NEAR(observed / (2.0 * reps), 25.0 / 17, 0.03);
}

TEST(protocol, decode_recovers_secret) {
    PairSource source(SourceParams{});
    GeneralizedBellAnalyzer gba;
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 16; n++) {
        for (int secret : {0, 1}) {
            for (int rep = 0; rep < 10; rep++) {
                auto shares = distribute(encode(secret, n, source, rng));
                auto result = decode_detailed(shares.alice, shares.bob, gba, rng);
                ASSERT_EQ(result.bit, secret);
                ASSERT_EQ(result.classes.size(), size_t(n));
                for (size_t k = 0; k < result.classes.size(); k++) {
                    ASSERT_EQ(result.classes[k], shares.alice.joint()->pairs[k].klass);
                }
            }
        }
    }
}

TEST(protocol, decode_needs_both_shares) {
    PairSource source(SourceParams{});
    GeneralizedBellAnalyzer gba;
    std::mt19937_64 rng(5);
    auto shares = distribute(encode(1, 3, source, rng));
    ASSERT_THROW(decode(shares.alice, std::nullopt, gba, rng), std::logic_error);
    ASSERT_THROW(decode(std::nullopt, shares.bob, gba, rng), std::logic_error);
    ASSERT_THROW(decode(std::nullopt, std::nullopt, gba, rng), std::logic_error);
    auto other = distribute(encode(1, 3, source, rng));
    ASSERT_THROW(merge(shares.alice, other.bob), std::invalid_argument);
    ASSERT_EQ(merge(shares.alice, shares.bob).size(), 3u);
}

TEST(protocol, shares_expose_only_local_states) {
    PairSource source(SourceParams{});
    std::mt19937_64 rng(8);
    auto shares = distribute(encode(0, 4, source, rng));
    ASSERT_EQ(shares.alice.path(), kAlicePath);
    ASSERT_EQ(shares.bob.path(), kBobPath);
    ASSERT_EQ(shares.alice.size(), 4u);
    for (size_t k = 0; k < shares.alice.size(); k++) {
        for (const Share *s : {static_cast<const Share *>(&shares.alice), static_cast<const Share *>(&shares.bob)}) {
            auto rho = s->reduced(k);
            rho.validate();
            ASSERT_NEAR(rho.trace(), 1, 1e-12);
            ASSERT_LT(rho.purity(), 1 - 1e-9);
        }
    }
}

TEST(protocol, seed_scheme) {
    ASSERT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
    std::set<uint64_t> seen;
    for (uint64_t root : {0ULL, 1ULL, 7ULL}) {
        for (uint64_t trial = 0; trial < 1000; trial++) {
            for (uint64_t stream : {0ULL, 1ULL}) {
                seen.insert(trial_seed(root, trial, stream));
            }
        }
    }
    ASSERT_EQ(seen.size(), 6000u);
}

TEST(protocol, sessions_are_deterministic_and_order_independent) {
    SessionConfig config;
    config.n = 4;
    config.trials = 50;
    config.seed = 7;
    config.keep_per_trial = true;
    auto a = run_sessions(config);
    auto b = run_sessions(config);
    ASSERT_EQ(a.aggregate, b.aggregate);
    ASSERT_EQ(a.aggregate.success_rate(), 1.0);
    ASSERT_EQ(a.per_trial.size(), 50u);

    SessionAggregate reversed;
    for (auto it = a.per_trial.rbegin(); it != a.per_trial.rend(); ++it) {
        reversed.add(*it);
    }
    ASSERT_EQ(reversed, a.aggregate);

    SessionAggregate left;
    SessionAggregate right;
    for (size_t k = 0; k < a.per_trial.size(); k++) {
        (k % 3 == 0 ? left : right).add(a.per_trial[k]);
    }
    right.merge(left);
    ASSERT_EQ(right, a.aggregate);

    // Trial k depends only on (seed, k).
    PairSource source(SourceParams{config.p, 2});
    std::mt19937_64 rng(trial_seed(config.seed, 17, 0));
    std::mt19937_64 diag(trial_seed(config.seed, 17, 1));
    auto again = run_session(config.n, config.secret, source, rng, diag);
    ASSERT_EQ(again.pulses_total, a.per_trial[17].pulses_total);
    ASSERT_EQ(again.label_histogram, a.per_trial[17].label_histogram);

    config.seed = 8;
    ASSERT_NE(run_sessions(config).aggregate, a.aggregate);
}

TEST(protocol, session_config_validation) {
    SessionConfig c;
    c.validate();
    c.n = 0;
    ASSERT_THROW(c.validate(), std::invalid_argument);
    c = SessionConfig();
    c.p = 0.2;
    ASSERT_THROW(c.validate(), std::invalid_argument);
    c = SessionConfig();
    c.trials = 0;
    ASSERT_THROW(c.validate(), std::invalid_argument);
    c = SessionConfig();
    c.secret = 3;
    ASSERT_THROW(c.validate(), std::invalid_argument);
}

TEST(protocol, session_statistics) {
    SessionConfig config;
    config.n = 8;
    config.trials = 400;
    config.seed = 3;
    auto report = run_sessions(config);
    const auto &agg = report.aggregate;
    ASSERT_EQ(agg.trials, 400u);
    ASSERT_EQ(agg.successes, 400u);
    uint64_t hist_total = agg.class_histogram[0] + agg.class_histogram[1] + agg.class_histogram[2];
    ASSERT_EQ(hist_total, agg.pairs_drawn);
    ASSERT_EQ(agg.pairs_drawn - agg.pairs_rejected, 8u * 400u);
    ASSERT_NEAR(agg.s1_fraction(), 0.4, 0.03);
    ASSERT_NEAR(agg.pulses_mean() / 4081.0, 1, 0.05);
}
