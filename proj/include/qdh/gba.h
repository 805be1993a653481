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

#ifndef QDH_GBA_H
#define QDH_GBA_H

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qdh/fock.h"
#include "qdh/labels.h"

namespace qdh {

enum class Combiner : uint8_t { PolarizingBeamSplitter, BalancedBeamSplitter };
enum class PlatePlacement : uint8_t { OutputArms, InputPaths, None };
enum class Arm : uint8_t { U, D };

/// Sign choices of the optics. A half-wave plate sends h -> (h + plate_h_sign v)/sqrt2
/// and v -> (h + plate_v_sign v)/sqrt2; equal signs make it non-unitary.
/// `splitter_sign` is the phase on the combiner's cross-coupled port.
struct GbaConventions {
    int plate_h_sign = -1;
    int plate_v_sign = +1;
    int splitter_sign = +1;

    bool operator==(const GbaConventions &) const = default;
};

struct GbaCircuit {
    Combiner combiner = Combiner::PolarizingBeamSplitter;
    PlatePlacement plates = PlatePlacement::OutputArms;
    GbaConventions conventions;

    /// PBS (h transmits i->u, j->d; v reflects i->d, j->u) followed by
    /// Hadamard plates h->(h-v)/sqrt2, v->(h+v)/sqrt2 on both output arms.
    static GbaCircuit standard() {
        return {};
    }
    std::string str() const;
    bool operator==(const GbaCircuit &) const = default;
};

/// The two input paths of the analyzer. Arm u exits on the modes of `first`
/// and arm d on the modes of `second`.
struct AnalyzerPaths {
    int first = 1;
    int second = 3;

    std::set<Mode> modes() const {
        return path_modes({first, second});
    }
};

struct Detector {
    Arm arm;
    Polarization pol;

    std::string str() const;  // "D_H^u"
    auto operator<=>(const Detector &) const = default;
};

/// Photon counts per detector (ideal, lossless, number resolving).
class ClickPattern {
   public:
    ClickPattern() = default;
    ClickPattern(std::initializer_list<std::pair<Detector, int>> counts);
    static ClickPattern from_output(const OccupationVector &output, AnalyzerPaths paths);

    int count(Detector d) const;
    int total() const;
    const std::map<Detector, int> &counts() const {
        return counts_;
    }
    std::string str() const;  // "{D_V^u, D_V^d}", "{D_H^u x2}"

    auto operator<=>(const ClickPattern &) const = default;
    bool operator==(const ClickPattern &) const = default;

   private:
    std::map<Detector, int> counts_;
};

/// Class of a two-photon click pattern. Throws std::invalid_argument("not a
/// heralded pair event") unless exactly two photons were detected.
GbaClass classify(const ClickPattern &pattern);

/// Unitary mode map on {h_i, v_i, h_j, v_j} realizing the circuit. Throws
/// std::invalid_argument("non-unitary convention set") otherwise.
ModeMap build_circuit(const GbaCircuit &config, AnalyzerPaths paths = {});

/// One detector-basis outcome with its Born probability and the normalized
/// state left on the modes outside the analyzer.
struct GbaBranch {
    ClickPattern pattern;
    std::optional<GbaClass> klass;  // set iff exactly two photons were detected
    double probability;
    FockState posterior;
};

struct GbaOutcome {
    ClickPattern pattern;
    std::optional<GbaClass> klass;
    double probability;
    FockState posterior;

    bool heralded() const {
        return klass.has_value();
    }
};

/// Draws one branch by its probability.
GbaOutcome sample_branch(const std::vector<GbaBranch> &branches, std::mt19937_64 &rng);

class GeneralizedBellAnalyzer {
   public:
    explicit GeneralizedBellAnalyzer(GbaCircuit circuit = GbaCircuit::standard());

    const GbaCircuit &circuit() const {
        return circuit_;
    }

    /// Full outcome distribution, sorted by click pattern. Throws on the zero
    /// state or when a ket sends more than four photons into the analyzer.
    std::vector<GbaBranch> branches(const FockState &state, AnalyzerPaths paths) const;

    GbaOutcome measure(const FockState &state, AnalyzerPaths paths, std::mt19937_64 &rng) const;

   private:
    GbaCircuit circuit_;
};

/// True if every one of the ten basis states on paths (1,3) lands in its
/// expected class with probability one.
bool reproduces_class_table(const GbaCircuit &config);

/// Every combiner, plate placement and sign convention, standard layout first.
std::vector<GbaCircuit> circuit_search_space();

/// First configuration of the search space reproducing the class table.
/// Throws std::runtime_error("no valid configuration") if none does.
GbaCircuit calibrate();

/// Ideal projective measurement of a pair in the ten-label basis.
/// The state must lie in the two-photon sector of the given paths.
std::array<double, 10> label_distribution(const FockState &state, AnalyzerPaths paths);
BellLabel measure_label(const FockState &state, AnalyzerPaths paths, std::mt19937_64 &rng);

}  // namespace qdh

#endif
