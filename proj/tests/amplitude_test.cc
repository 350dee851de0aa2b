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

#include <complex>

#include "bettiforge/amplitude.h"
#include "bettiforge/homology.h"
#include "bettiforge/kaiser.h"

namespace bettiforge {
namespace {

using cd = std::complex<double>;

// Phase estimation on the Grover rotation by explicit sums: the start state
// splits evenly over eigenphases +-theta, the control register carries the
// normalized window, and the readout is a DFT over 2N + 1 outcomes.
std::vector<double> phase_estimation_oracle(double a, int N, double alpha) {
    KaiserKernel k = kaiser_kernel(N, alpha);
    double norm2 = 0;
    for (double w : k.weights) norm2 += w * w;
    double theta = 2 * std::asin(a);
    int M = 2 * N + 1;
    std::vector<double> p(M, 0.0);
    for (int j = -N; j <= N; j++) {
        for (double sign : {1.0, -1.0}) {
            cd amp = 0;
            for (int m = -N; m <= N; m++) {
                amp += k.weights[m + N] * std::exp(cd(0, m * (sign * theta - 2 * M_PI * j / M)));
            }
            p[j + N] += 0.5 * std::norm(amp) / (norm2 * M);
        }
    }
    return p;
}

TEST(Amplitude, DistributionMatchesStateVectorOracle) {
    for (double a : {0.0, 0.13, 0.5, 0.97}) {
        for (int N : {5, 17}) {
            QaeDistribution d = qae_outcome_distribution(a, N, 1.3);
            auto want = phase_estimation_oracle(a, N, 1.3);
            double total = 0;
            for (int j = 0; j < 2 * N + 1; j++) {
                EXPECT_NEAR(d.probs[j], want[j], 1e-12);
                total += want[j];
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
            EXPECT_NEAR(d.cumulative.back(), 1.0, 1e-12);
        }
    }
}

TEST(Amplitude, SampleIsInverseCdf) {
    QaeDistribution d = qae_outcome_distribution(0.4, 12, 1.0);
    for (double u : {0.0, 0.1, 0.5, 0.77, 0.999999}) {
        int64_t j = d.sample(u);
        double below = j + d.N > 0 ? d.cumulative[j + d.N - 1] : 0.0;
        EXPECT_LE(below, u + 1e-15);
        EXPECT_GT(d.cumulative[j + d.N], u);
    }
}

TEST(Amplitude, FailureProbabilityBySummation) {
    QaeDistribution d = qae_outcome_distribution(0.3, 60, 2.0);
    double want = 0;
    for (int64_t j = -60; j <= 60; j++) {
        double est = std::sin(std::abs(2 * M_PI * j / 121.0) / 2);
        if (std::abs(est - 0.3) > 0.02) want += d.probs[j + 60];
    }
    EXPECT_NEAR(d.failure_probability(0.02), want, 1e-14);
}

TEST(Amplitude, TrialsTrackExactFailure) {
    QaeTrials t = amplitude_estimate_trials(0.3, 0.05, 0.2, 20000, 4);
    double sigma = std::sqrt(t.exact_failure * (1 - t.exact_failure) / 20000.0);
    EXPECT_NEAR(t.failure_rate, t.exact_failure, 4 * sigma + 1e-4);
    EXPECT_LE(t.exact_failure, 0.2);
    QaeTrials again = amplitude_estimate_trials(0.3, 0.05, 0.2, 20000, 4);
    EXPECT_EQ(t.failures, again.failures);
}

TEST(Amplitude, SingleRunReproducible) {
    QaeResult a = amplitude_estimate_sim(0.6, 0.01, 0.05, 9);
    QaeResult b = amplitude_estimate_sim(0.6, 0.01, 0.05, 9);
    EXPECT_EQ(a.outcome, b.outcome);
    EXPECT_NEAR(a.estimate, 0.6, 0.05);
    EXPECT_THROW(qae_outcome_distribution(1.2, 5, 1.0), std::invalid_argument);
}

TEST(Amplitude, PipelineEstimatesNormalizedBetti) {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
        Graph g = gen_kpartite(m, k);
        double want = (double)betti_exact(g, k) / (double)enumerate_cliques(g, k).size();
        int hits = 0;
        for (uint64_t seed = 0; seed < 20; seed++) {
            PipelineResult p = end_to_end_normalized_betti(g, k, 0.2, 0.1, seed);
            EXPECT_NEAR(p.target, want, 1e-12);
            EXPECT_NEAR(p.filtered_norm2, want, 0.2 * want / 4);
            hits += std::abs(p.estimate - want) <= 0.2 * want;
        }
        EXPECT_GE(hits, 16) << m << "," << k;
    }
    EXPECT_THROW(end_to_end_normalized_betti(gen_complete(9), 2, 0.1, 0.1, 1), DeskScaleError);
}

}  // namespace
}  // namespace bettiforge
