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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "bettiforge/dicke.h"

namespace bettiforge {
namespace {

// Failure iff the k-th and (k+1)-th largest draws coincide.
double tie_oracle(int n, int k, int bits) {
    int f = 1 << bits;
    int64_t total = 1, fails = 0;
    for (int i = 0; i < n; i++) total *= f;
    std::vector<int> v(n);
    for (int64_t t = 0; t < total; t++) {
        int64_t r = t;
        for (int i = 0; i < n; i++) {
            v[i] = (int)(r % f);
            r /= f;
        }
        std::sort(v.begin(), v.end(), std::greater<int>());
        fails += k < n && v[k - 1] == v[k];
    }
    return (double)fails / (double)total;
}

TEST(Dicke, WorkedExamples) {
    ThresholdRun ok = dicke_threshold_run({0b0110, 0b1110, 0b0111, 0b0010}, 2, 4);
    EXPECT_EQ(ok.bits, (std::vector<int>{0, 1, 1, 1}));
    EXPECT_EQ(ok.threshold, 0b0111u);
    EXPECT_EQ(ok.selected, Mask{0b0110});
    EXPECT_TRUE(ok.success);
    EXPECT_FALSE(dicke_threshold_run({0b0110, 0b1110, 0b0110, 0b0010}, 2, 4).success);
}

TEST(Dicke, SeedBits) {
    EXPECT_EQ(dicke_seed_bits(64, 8), 9);
    EXPECT_EQ(dicke_seed_bits(4, 4), 4);
    EXPECT_EQ(dicke_seed_bits(5, 3), 4);
}

TEST(Dicke, ExactAndExhaustiveAgreeWithTieOracle) {
    for (int n = 2; n <= 4; n++) {
        for (int k = 1; k < n; k++) {
            for (int bits = 1; bits <= 3; bits++) {
                double want = tie_oracle(n, k, bits);
                EXPECT_NEAR(dicke_exhaustive_failure(n, k, bits), want, 1e-12) << n << k << bits;
                EXPECT_NEAR(dicke_exact_failure(n, k, int64_t{1} << bits), want, 1e-12) << n << k << bits;
            }
        }
    }
}

TEST(Dicke, MonteCarloMatchesExact) {
    DickeStats s = dicke_success_prob(16, 4, 2, 200000, 3);
    double sigma = std::sqrt(s.exact_failure * (1 - s.exact_failure) / 200000.0);
    EXPECT_NEAR(s.failure_rate, s.exact_failure, 4 * sigma);
    EXPECT_EQ(dicke_success_prob(16, 4, 2, 1000, 3).failures, dicke_success_prob(16, 4, 2, 1000, 3).failures);
}

TEST(Dicke, Errors) {
    EXPECT_THROW(dicke_threshold_run({1, 2}, 3, 2), std::invalid_argument);
    EXPECT_THROW(dicke_threshold_run({1, 8}, 1, 3), std::invalid_argument);
    EXPECT_THROW(dicke_exhaustive_failure(8, 2, 4), DeskScaleError);
}

}  // namespace
}  // namespace bettiforge
