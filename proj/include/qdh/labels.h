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

#ifndef QDH_LABELS_H
#define QDH_LABELS_H

#include <array>
#include <cstdint>
#include <string>

namespace qdh {

/// The ten two-photon, two-path basis states. Phi/Psi put one photon in each
/// path; Gamma/Upsilon/Omega put both photons in a single path.
enum class BellLabel : uint8_t {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
    GammaPlus,
    GammaMinus,
    UpsilonPlus,
    UpsilonMinus,
    OmegaPlus,
    OmegaMinus,
};

/// S1: one photon per path. S2: both photons in one path.
enum class BellSet : uint8_t { S1, S2 };

/// Analyzer outcome classes: same-polarization u/d coincidence, different-
/// polarization u/d coincidence, anything else.
enum class GbaClass : uint8_t { Class1 = 1, Class2 = 2, Class3 = 3 };

constexpr std::array<BellLabel, 10> kAllBellLabels = {
    BellLabel::PhiPlus,     BellLabel::PhiMinus,     BellLabel::PsiPlus,   BellLabel::PsiMinus,
    BellLabel::GammaPlus,   BellLabel::GammaMinus,   BellLabel::UpsilonPlus, BellLabel::UpsilonMinus,
    BellLabel::OmegaPlus,   BellLabel::OmegaMinus,
};

constexpr std::array<GbaClass, 3> kAllGbaClasses = {GbaClass::Class1, GbaClass::Class2, GbaClass::Class3};

BellSet set_of(BellLabel label);
GbaClass class_of(BellLabel label);
std::string name_of(BellLabel label);  // "Phi+", "Omega-", ...
std::string name_of(GbaClass klass);   // "Class1", ...

inline size_t index_of(BellLabel label) {
    return static_cast<size_t>(label);
}
inline size_t index_of(GbaClass klass) {
    return static_cast<size_t>(klass) - 1;
}

}  // namespace qdh

#endif
