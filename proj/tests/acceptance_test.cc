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

// Usage: acceptance_test [--criterion N]... [--report]
// Prints one PASS/FAIL line per criterion with its checks. With --report the
// exit status is always 0.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "bettiforge/verify.h"

int main(int argc, char **argv) {
    std::vector<int> ids;
    bool report = false;
    for (int i = 1; i < argc; i++) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            ids.push_back(std::atoi(argv[++i]));
        } else if (std::strcmp(argv[i], "--report") == 0) {
            report = true;
        } else {
            std::fprintf(stderr, "unknown argument %s\n", argv[i]);
            return 2;
        }
    }
    if (ids.empty()) {
        for (int i = 1; i <= bettiforge::kCriterionCount; i++) {
            ids.push_back(i);
        }
    }
    int failed = 0;
    for (int id : ids) {
        bettiforge::CriterionResult r = bettiforge::run_criterion(id);
        std::fputs(bettiforge::format_criterion(r, true).c_str(), stdout);
        std::fflush(stdout);
        failed += !r.pass;
    }
    std::printf("%zu criteria, %d passed, %d failed\n", ids.size(), (int)ids.size() - failed, failed);
    return report || failed == 0 ? 0 : 1;
}
