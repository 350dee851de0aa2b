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

#ifndef BETTIFORGE_AMPLITUDE_H
#define BETTIFORGE_AMPLITUDE_H

#include <cstdint>
#include <vector>

#include "bettiforge/graph.h"
#include "bettiforge/resources.h"

namespace bettiforge {

// Exact outcome law of Kaiser-window phase estimation on the Grover rotation
// with angle theta = 2 asin(a). Outcome j in [-N, N] reads the phase
// 2 pi j / (2N + 1) and the amplitude sin(|phase| / 2).
struct QaeDistribution {
    double a = 0;
    int64_t N = 0;
    double alpha = 0;
    std::vector<double> probs;       // index j + N
    std::vector<double> cumulative;  // running sums of probs

    double estimate_for(int64_t j) const;
    // Probability that the estimate misses a by more than epsilon.
    double failure_probability(double epsilon) const;
    int64_t sample(double u) const;
};

QaeDistribution qae_outcome_distribution(double a, int64_t N, double alpha);

struct QaeResult {
    double a = 0;
    double estimate = 0;
    int64_t outcome = 0;
    int64_t N = 0;
    double alpha = 0;
    uint64_t seed = 0;
};

// One run with N and alpha from kaiser_params(epsilon, delta).
QaeResult amplitude_estimate_sim(double a, double epsilon, double delta, uint64_t seed,
                                 KaiserMode mode = KaiserMode::kAsymptotic);

struct QaeTrials {
    double a = 0;
    double epsilon = 0;
    double delta = 0;
    int64_t N = 0;
    double alpha = 0;
    int64_t trials = 0;
    int64_t failures = 0;
    double failure_rate = 0;
    double sigma = 0;          // binomial standard error at delta
    double exact_failure = 0;  // from the outcome law
};

QaeTrials amplitude_estimate_trials(double a, double epsilon, double delta, int64_t trials, uint64_t seed,
                                    KaiserMode mode = KaiserMode::kAsymptotic);

struct PipelineResult {
    int n = 0;
    int k = 0;
    double r = 0;
    double delta = 0;
    uint64_t seed = 0;
    int64_t clique_count = 0;
    double binom = 0;
    int64_t betti = 0;
    double target = 0;  // betti / clique_count

    double a0 = 0;  // sqrt(|Cl_k| / C(n,k))
    int64_t amp_rounds = 0;
    double amplified = 0;  // sin((2m+1) asin a0)
    double epsilon1 = 0;
    int64_t qae1_steps = 0;
    double a0_hat = 0;
    double amplified_hat = 0;

    int64_t ell = 0;
    double filter_epsilon = 0;
    double filtered_norm2 = 0;

    double af = 0;  // amplified * sqrt(filtered_norm2)
    double epsilon2 = 0;
    int64_t qae2_steps = 0;
    double af_hat = 0;

    double estimate = 0;
    double confidence = 0;
};

// Dicke preparation, clique amplification, Chebyshev filtering and two
// rounds of amplitude estimation, each simulated exactly in its 2-D
// subspace. Budget: r1 = r/4 for the clique amplitude, r2 = r/2 for the
// overlap, r3 = r/4 for the filter, delta split evenly.
PipelineResult end_to_end_normalized_betti(const Graph &g, int k, double r, double delta, uint64_t seed);

}  // namespace bettiforge

#endif
