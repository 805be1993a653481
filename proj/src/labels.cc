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

#include "qdh/labels.h"

using namespace qdh;

BellSet qdh::set_of(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
        case BellLabel::PhiMinus:
        case BellLabel::PsiPlus:
        case BellLabel::PsiMinus:
            return BellSet::S1;
        default:
            return BellSet::S2;
    }
}

GbaClass qdh::class_of(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
        case BellLabel::OmegaPlus:
            return GbaClass::Class1;
        case BellLabel::PhiMinus:
        case BellLabel::OmegaMinus:
            return GbaClass::Class2;
        default:
            return GbaClass::Class3;
    }
}

std::string qdh::name_of(BellLabel label) {
    static constexpr const char *names[] = {
        "Phi+", "Phi-", "Psi+", "Psi-", "Gamma+", "Gamma-", "Upsilon+", "Upsilon-", "Omega+", "Omega-",
    };
    return names[index_of(label)];
}

std::string qdh::name_of(GbaClass klass) {
    return "Class" + std::to_string(static_cast<int>(klass));
}
