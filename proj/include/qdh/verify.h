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

#ifndef QDH_VERIFY_H
#define QDH_VERIFY_H

#include <string>
#include <vector>

namespace qdh {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Exact and numeric identities of the state algebra, analyzer and analysis
/// layers. Deterministic; runs in well under a second.
std::vector<CheckResult> run_identity_suite();

}  // namespace qdh

#endif
