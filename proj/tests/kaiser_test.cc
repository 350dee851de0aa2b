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

#include <cmath>

#include "bettiforge/kaiser.h"

namespace bettiforge {
namespace {

// Trapezoid over [-L, L] with the averaged sin^2 tail 2 * 1/(2L).
double brute_total_mass(double alpha) {
    double L = 4000.0, h = 0.005;
    double sum = 0.0;
    for (double x = 0; x <= L; x += h) {
        double s = kaiser_transform(x, alpha);
        sum += (x == 0 ? 0.5 : 1.0) * s * s;
    }
    return 2.0 * sum * h + 1.0 / L;
}

TEST(Kaiser, TransformContinuousAtBranchPoint) {
    for (double alpha : {0.5, 2.0}) {
        double a = M_PI * alpha;
        // slope of sin(u)/u in x near the branch point is -a/3
        EXPECT_NEAR(kaiser_transform(a - 1e-6, alpha), 1.0 + a / 3 * 1e-6, 1e-10);
        EXPECT_NEAR(kaiser_transform(a + 1e-6, alpha), 1.0 - a / 3 * 1e-6, 1e-10);
    }
    EXPECT_NEAR(kaiser_transform(2.0, 0.0), std::sin(2.0) / 2.0, 1e-15);
}

TEST(Kaiser, TotalMassAgainstQuadratureOracle) {
    EXPECT_NEAR(kaiser_total_mass(0.0), M_PI, 1e-9);
    for (double alpha : {0.5, 1.0, 2.0}) {
        double want = brute_total_mass(alpha);
        EXPECT_NEAR(kaiser_total_mass(alpha) / want, 1.0, 2e-4) << alpha;
    }
}

TEST(Kaiser, MassAboveIsComplementary) {
    for (double alpha : {0.0, 1.5}) {
        for (double x : {0.3, 4.0, 12.0}) {
            EXPECT_NEAR(kaiser_mass_above(x, alpha) + kaiser_mass_above(-x, alpha), kaiser_total_mass(alpha), 1e-8);
        }
    }
}

TEST(Kaiser, AlphaForTailInvertsTail) {
    EXPECT_EQ(kaiser_alpha_for_tail(0.2), 0.0);  // the rectangular window already suffices
    for (double delta : {0.05, 0.01, 1e-4}) {
        double alpha = kaiser_alpha_for_tail(delta);
        EXPECT_NEAR(kaiser_continuum_tail(alpha) / delta, 1.0, 1e-6);
    }
}

TEST(Kaiser, KernelShape) {
    KaiserKernel k = kaiser_kernel(10, 2.0);
    ASSERT_EQ(k.weights.size(), 21u);
    EXPECT_DOUBLE_EQ(k.weights[10], 1.0);
    for (int m = 0; m < 10; m++) {
        EXPECT_DOUBLE_EQ(k.weights[m], k.weights[20 - m]);
        EXPECT_LE(k.weights[m], k.weights[m + 1]);
    }
    EXPECT_NEAR(k.weights[0], 1.0 / std::cyl_bessel_i(0.0, 2.0 * M_PI), 1e-15);
}

TEST(Kaiser, PhaseDensityNormalized) {
    KaiserPhaseDistribution d(40, 1.5);
    int steps = 200000;
    double h = 2 * M_PI / steps, sum = 0;
    for (int i = 0; i <= steps; i++) {
        double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        sum += w * d.density(-M_PI + i * h);
    }
    EXPECT_NEAR(sum * h, 1.0, 1e-5);
    EXPECT_NEAR(d.tail_mass(0.0), 1.0, 1e-12);
    EXPECT_GT(d.tail_mass(0.5 * d.first_zero()), d.tail_mass(d.first_zero()));
}

}  // namespace
}  // namespace bettiforge
