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

#include "qdh/gba.h"

#include <cmath>
#include <stdexcept>

#include "qdh/states.h"

using namespace qdh;

namespace {

constexpr double kProbabilityTol = 1e-10;

const char *name(Combiner c) {
    return c == Combiner::PolarizingBeamSplitter ? "PBS" : "BS";
}

const char *name(PlatePlacement p) {
    switch (p) {
        case PlatePlacement::OutputArms:
            return "plates@output";
        case PlatePlacement::InputPaths:
            return "plates@input";
        case PlatePlacement::None:
            return "no-plates";
    }
    return "?";
}

// Mode order inside the 4x4 circuit matrix.
constexpr Eigen::Index kFirstH = 0, kFirstV = 1, kSecondH = 2, kSecondV = 3;

Eigen::MatrixXcd combiner_matrix(const GbaCircuit &config) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    double s = config.conventions.splitter_sign;
    if (config.combiner == Combiner::PolarizingBeamSplitter) {
        m(kFirstH, kFirstH) = 1;    // h_i -> h_u
        m(kSecondH, kSecondH) = 1;  // h_j -> h_d
        m(kSecondV, kFirstV) = s;   // v_i -> v_d
        m(kFirstV, kSecondV) = 1;   // v_j -> v_u
    } else {
        double r = 1 / std::sqrt(2.0);
        for (Eigen::Index pol = 0; pol < 2; pol++) {
            m(kFirstH + pol, kFirstH + pol) = r;
            m(kSecondH + pol, kFirstH + pol) = s * r;
            m(kFirstH + pol, kSecondH + pol) = r;
            m(kSecondH + pol, kSecondH + pol) = -s * r;
        }
    }
    return m;
}

Eigen::MatrixXcd plate_matrix(const GbaConventions &c) {
    double r = 1 / std::sqrt(2.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    for (Eigen::Index base : {kFirstH, kSecondH}) {
        m(base, base) = r;
        m(base + 1, base) = c.plate_h_sign * r;
        m(base, base + 1) = r;
        m(base + 1, base + 1) = c.plate_v_sign * r;
    }
    return m;
}

}  // namespace

std::string GbaCircuit::str() const {
    return std::string(name(combiner)) + "+" + name(plates) + "(h" + (conventions.plate_h_sign > 0 ? "+" : "-") +
           "v,v" + (conventions.plate_v_sign > 0 ? "+" : "-") + "h,split" + (conventions.splitter_sign > 0 ? "+" : "-") +
           ")";
}

std::string Detector::str() const {
    return std::string("D_") + (pol == Polarization::H ? "H" : "V") + "^" + (arm == Arm::U ? "u" : "d");
}

ClickPattern::ClickPattern(std::initializer_list<std::pair<Detector, int>> counts) {
    for (const auto &[d, n] : counts) {
        if (n < 0) {
            throw std::invalid_argument("negative click count");
        }
        if (n > 0) {
            counts_[d] += n;
        }
    }
}

ClickPattern ClickPattern::from_output(const OccupationVector &output, AnalyzerPaths paths) {
    ClickPattern out;
    for (const auto &[mode, n] : output.entries()) {
        Arm arm;
        if (mode.path == paths.first) {
            arm = Arm::U;
        } else if (mode.path == paths.second) {
            arm = Arm::D;
        } else {
            throw std::invalid_argument("mode " + mode.str() + " is not an analyzer output");
        }
        out.counts_[Detector{arm, mode.pol}] += n;
    }
    return out;
}

int ClickPattern::count(Detector d) const {
    auto it = counts_.find(d);
    return it == counts_.end() ? 0 : it->second;
}

int ClickPattern::total() const {
    int t = 0;
    for (const auto &kv : counts_) {
        t += kv.second;
    }
    return t;
}

std::string ClickPattern::str() const {
    std::string out = "{";
    bool first = true;
    for (const auto &[d, n] : counts_) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += d.str();
        if (n > 1) {
            out += " x" + std::to_string(n);
        }
    }
    return out + "}";
}

GbaClass qdh::classify(const ClickPattern &pattern) {
    if (pattern.total() != 2) {
        throw std::invalid_argument("not a heralded pair event");
    }
    for (auto pu : {Polarization::H, Polarization::V}) {
        for (auto pd : {Polarization::H, Polarization::V}) {
            if (pattern.count({Arm::U, pu}) == 1 && pattern.count({Arm::D, pd}) == 1) {
                return pu == pd ? GbaClass::Class1 : GbaClass::Class2;
            }
        }
    }
    return GbaClass::Class3;
}

ModeMap qdh::build_circuit(const GbaCircuit &config, AnalyzerPaths paths) {
    if (paths.first == paths.second) {
        throw std::invalid_argument("analyzer needs two distinct paths");
    }
    Eigen::MatrixXcd combiner = combiner_matrix(config);
    Eigen::MatrixXcd plates = plate_matrix(config.conventions);
    Eigen::MatrixXcd total;
    switch (config.plates) {
        case PlatePlacement::OutputArms:
            total = plates * combiner;
            break;
        case PlatePlacement::InputPaths:
            total = combiner * plates;
            break;
        case PlatePlacement::None:
            total = combiner;
            break;
    }
    ModeMap map({h(paths.first), v(paths.first), h(paths.second), v(paths.second)}, total);
    if (!map.is_unitary(1e-12)) {
        throw std::invalid_argument("non-unitary convention set");
    }
    return map;
}

GbaOutcome qdh::sample_branch(const std::vector<GbaBranch> &branches, std::mt19937_64 &rng) {
    if (branches.empty()) {
        throw std::invalid_argument("no outcomes to sample");
    }
    double u = std::uniform_real_distribution<double>(0, 1)(rng);
    double acc = 0;
    for (const auto &b : branches) {
        acc += b.probability;
        if (u < acc) {
            return {b.pattern, b.klass, b.probability, b.posterior};
        }
    }
    const auto &b = branches.back();
    return {b.pattern, b.klass, b.probability, b.posterior};
}

GeneralizedBellAnalyzer::GeneralizedBellAnalyzer(GbaCircuit circuit) : circuit_(circuit) {
    build_circuit(circuit_);
}

std::vector<GbaBranch> GeneralizedBellAnalyzer::branches(const FockState &state, AnalyzerPaths paths) const {
    if (state.is_zero()) {
        throw std::invalid_argument("cannot measure the empty state");
    }
    auto modes = paths.modes();
    for (const auto &[ket, amp] : state.amplitudes()) {
        if (ket.split(modes).first.total() > 4) {
            throw std::invalid_argument("more than four photons enter the analyzer");
        }
    }
    auto map = build_circuit(circuit_, paths).embedded(state.occupied_modes());
    auto out_state = apply_mode_map(state, map);
    double total = out_state.norm_squared();

    std::vector<GbaBranch> out;
    for (auto &[output, conditional] : split_by_occupation(out_state, modes)) {
        GbaBranch b;
        b.pattern = ClickPattern::from_output(output, paths);
        if (b.pattern.total() == 2) {
            b.klass = classify(b.pattern);
        }
        b.probability = conditional.norm_squared() / total;
        b.posterior = conditional.normalized();
        out.push_back(std::move(b));
    }
    return out;
}

GbaOutcome GeneralizedBellAnalyzer::measure(const FockState &state, AnalyzerPaths paths, std::mt19937_64 &rng) const {
    return sample_branch(branches(state, paths), rng);
}

bool qdh::reproduces_class_table(const GbaCircuit &config) {
    try {
        GeneralizedBellAnalyzer gba(config);
        for (auto label : kAllBellLabels) {
            double in_class = 0;
            for (const auto &b : gba.branches(bell(label, 1, 3), {1, 3})) {
                if (b.klass == class_of(label)) {
                    in_class += b.probability;
                }
            }
            if (std::abs(in_class - 1) > kProbabilityTol) {
                return false;
            }
        }
        return true;
    } catch (const std::invalid_argument &) {
        return false;
    }
}

std::vector<GbaCircuit> qdh::circuit_search_space() {
    std::vector<GbaCircuit> out;
    for (auto combiner : {Combiner::PolarizingBeamSplitter, Combiner::BalancedBeamSplitter}) {
        for (auto plates : {PlatePlacement::OutputArms, PlatePlacement::InputPaths, PlatePlacement::None}) {
            for (int hs : {-1, +1}) {
                for (int vs : {+1, -1}) {
                    for (int ss : {+1, -1}) {
                        out.push_back({combiner, plates, {hs, vs, ss}});
                    }
                }
            }
        }
    }
    return out;
}

GbaCircuit qdh::calibrate() {
    for (const auto &config : circuit_search_space()) {
        if (reproduces_class_table(config)) {
            return config;
        }
    }
    throw std::runtime_error("no valid configuration");
}

std::array<double, 10> qdh::label_distribution(const FockState &state, AnalyzerPaths paths) {
    auto modes = paths.modes();
    double norm2 = state.norm_squared();
    if (norm2 == 0) {
        throw std::invalid_argument("cannot measure the empty state");
    }
    std::array<double, 10> out{};
    double total = 0;
    for (auto label : kAllBellLabels) {
        auto rest = project_local(state, bell(label, paths.first, paths.second), modes);
        out[index_of(label)] = rest.norm_squared() / norm2;
        total += out[index_of(label)];
    }
    if (std::abs(total - 1) > kProbabilityTol) {
        throw std::invalid_argument("state leaves the two-photon sector of the analyzer paths");
    }
    return out;
}

BellLabel qdh::measure_label(const FockState &state, AnalyzerPaths paths, std::mt19937_64 &rng) {
    auto probs = label_distribution(state, paths);
    double u = std::uniform_real_distribution<double>(0, 1)(rng);
    double acc = 0;
    BellLabel last = kAllBellLabels.front();
    for (auto label : kAllBellLabels) {
        if (probs[index_of(label)] == 0) {
            continue;
        }
        last = label;
        acc += probs[index_of(label)];
        if (u < acc) {
            return label;
        }
    }
    return last;
}
