// Copyright 2026 The bettiforge Authors
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

#ifndef BETTIFORGE_VERIFY_H
#define BETTIFORGE_VERIFY_H

#include <cstdint>
#include <string>
#include <vector>

namespace bettiforge {

struct CheckLine {
    std::string what;
    bool pass = false;
    std::string value;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double time_limit = 0;
    std::vector<CheckLine> checks;
};

constexpr int kCriterionCount = 10;

// Runs one acceptance criterion (1..10). A criterion passes when every
// check passes and the run finished inside its time limit.
CriterionResult run_criterion(int id, uint64_t seed = 20260101);

// "PASS criterion 3 resource anchors (1.20 s)" followed by indented checks.
std::string format_criterion(const CriterionResult &r, bool verbose);

}  // namespace bettiforge

#endif
