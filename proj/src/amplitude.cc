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

#include "bettiforge/amplitude.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bettiforge/filter.h"
#include "bettiforge/homology.h"
#include "bettiforge/kaiser.h"
#include "bettiforge/rng.h"

namespace bettiforge {

namespace {

constexpr int64_t kMaxQaeSteps = 200000;
constexpr int64_t kTrialsPerChunk = 256;

double window_sum(const std::vector<double> &w, int64_t N, double dphi) {
    double acc = w[N];
    for (int64_t m = 1; m <= N; m++) {
        acc += 2.0 * w[m + N] * std::cos((double)m * dphi);
    }
    return acc;
}

}  // namespace

double QaeDistribution::estimate_for(int64_t j) const {
    double phase = 2.0 * M_PI * (double)j / (double)(2 * N + 1);
    return std::sin(std::abs(phase) / 2.0);
}

double QaeDistribution::failure_probability(double epsilon) const {
    double fail = 0.0;
    for (int64_t j = -N; j <= N; j++) {
        if (std::abs(estimate_for(j) - a) > epsilon) {
            fail += probs[j + N];
        }
    }
    return std::min(1.0, std::max(0.0, fail));
}

int64_t QaeDistribution::sample(double u) const {
    double target = u * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    int64_t idx = std::min<int64_t>(it - cumulative.begin(), (int64_t)cumulative.size() - 1);
    return idx - N;
}

QaeDistribution qae_outcome_distribution(double a, int64_t N, double alpha) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw std::invalid_argument("amplitude must lie in [0, 1]");
    }
    if (N < 1) {
        throw std::invalid_argument("phase estimation needs N >= 1");
    }
    if (N > kMaxQaeSteps) {
        throw DeskScaleError("phase estimation limited to N <= " + std::to_string(kMaxQaeSteps));
    }
    QaeDistribution d;
    d.a = a;
    d.N = N;
    d.alpha = alpha;
    KaiserKernel kernel = kaiser_kernel((int)N, alpha);
    double norm2 = 0.0;
    for (double w : kernel.weights) {
        norm2 += w * w;
    }
    double scale = 1.0 / (norm2 * (double)(2 * N + 1));
    double theta = 2.0 * std::asin(a);
    d.probs.resize(2 * N + 1);
    d.cumulative.resize(2 * N + 1);
    double running = 0.0;
    for (int64_t j = -N; j <= N; j++) {
        double phase = 2.0 * M_PI * (double)j / (double)(2 * N + 1);
        double plus = window_sum(kernel.weights, N, theta - phase);
        double minus = window_sum(kernel.weights, N, -theta - phase);
        double p = 0.5 * (plus * plus + minus * minus) * scale;
        d.probs[j + N] = p;
        running += p;
        d.cumulative[j + N] = running;
    }
    return d;
}

QaeResult amplitude_estimate_sim(double a, double epsilon, double delta, uint64_t seed, KaiserMode mode) {
    KaiserParams kp = kaiser_params(epsilon, delta, mode);
    QaeDistribution d = qae_outcome_distribution(a, kp.steps, kp.alpha);
    Rng rng(seed);
    QaeResult out;
    out.a = a;
    out.N = kp.steps;
    out.alpha = kp.alpha;
    out.seed = seed;
    out.outcome = d.sample(rng.uniform());
    out.estimate = d.estimate_for(out.outcome);
    return out;
}

QaeTrials amplitude_estimate_trials(double a, double epsilon, double delta, int64_t trials, uint64_t seed,
                                    KaiserMode mode) {
    if (trials <= 0) {
        throw std::invalid_argument("trials must be positive");
    }
    KaiserParams kp = kaiser_params(epsilon, delta, mode);
    QaeDistribution d = qae_outcome_distribution(a, kp.steps, kp.alpha);
    QaeTrials out;
    out.a = a;
    out.epsilon = epsilon;
    out.delta = delta;
    out.N = kp.steps;
    out.alpha = kp.alpha;
    out.trials = trials;
    int64_t chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
    std::vector<int64_t> failures(chunks, 0);
    parallel_for((size_t)chunks, [&](size_t chunk) {
        Rng rng = Rng::derive(seed, chunk);
        int64_t begin = (int64_t)chunk * kTrialsPerChunk;
        int64_t end = std::min(trials, begin + kTrialsPerChunk);
        for (int64_t t = begin; t < end; t++) {
            double est = d.estimate_for(d.sample(rng.uniform()));
            failures[chunk] += std::abs(est - a) > epsilon;
        }
    });
    for (int64_t f : failures) {
        out.failures += f;
    }
    out.failure_rate = (double)out.failures / (double)trials;
    out.sigma = std::sqrt(delta * (1.0 - delta) / (double)trials);
    out.exact_failure = d.failure_probability(epsilon);
    return out;
}

PipelineResult end_to_end_normalized_betti(const Graph &g, int k, double r, double delta, uint64_t seed) {
    if (g.n() > 8) {
        throw DeskScaleError("pipeline simulation limited to n <= 8");
    }
    if (k < 1 || k > g.n()) {
        throw std::invalid_argument("need 1 <= k <= n");
    }
    if (!(r > 0 && r < 1) || !(delta > 0 && delta < 1)) {
        throw std::invalid_argument("need 0 < r < 1 and 0 < delta < 1");
    }
    PipelineResult out;
    out.n = g.n();
    out.k = k;
    out.r = r;
    out.delta = delta;
    out.seed = seed;
    double r1 = 0.25 * r, r2 = 0.5 * r, r3 = 0.25 * r;
    double delta1 = 0.5 * delta, delta2 = 0.5 * delta;

    std::vector<Mask> cl = enumerate_cliques(g, k);
    out.clique_count = (int64_t)cl.size();
    if (out.clique_count == 0) {
        throw std::invalid_argument("graph has no k-cliques");
    }
    out.binom = binomial(g.n(), k);
    out.a0 = std::min(1.0, std::sqrt((double)out.clique_count / out.binom));
    double angle = std::asin(out.a0);
    out.amp_rounds = std::max<int64_t>(0, (int64_t)std::floor(M_PI / 4.0 / angle - 0.5));
    double turns = (double)(2 * out.amp_rounds + 1);
    out.amplified = std::sin(turns * angle);

    Rng rng(seed);
    out.epsilon1 = r1 * out.a0 / (2.0 * turns);
    KaiserParams kp1 = kaiser_params(out.epsilon1, delta1);
    QaeDistribution d1 = qae_outcome_distribution(out.a0, kp1.steps, kp1.alpha);
    out.qae1_steps = kp1.steps;
    out.a0_hat = d1.estimate_for(d1.sample(rng.uniform()));
    out.amplified_hat = std::sin(turns * std::asin(out.a0_hat));

    out.filter_epsilon = std::sqrt(r3 / (double)out.clique_count);
    out.ell = filter_degree_for_graph(g, k, out.filter_epsilon);
    FilterResult fr = apply_filter_to_state(g, k, out.ell, out.filter_epsilon);
    out.betti = fr.betti;
    out.target = fr.target;
    out.filtered_norm2 = fr.a2;

    out.af = std::min(1.0, out.amplified * std::sqrt(fr.a2));
    out.epsilon2 = 0.5 * r2 * out.amplified_hat / std::sqrt((double)out.clique_count);
    KaiserParams kp2 = kaiser_params(out.epsilon2, delta2);
    QaeDistribution d2 = qae_outcome_distribution(out.af, kp2.steps, kp2.alpha);
    out.qae2_steps = kp2.steps;
    out.af_hat = d2.estimate_for(d2.sample(rng.uniform()));

    out.estimate = out.amplified_hat > 0 ? out.af_hat * out.af_hat / (out.amplified_hat * out.amplified_hat) : 0.0;
    out.confidence = (1.0 - delta1) * (1.0 - delta2);
    return out;
}

}  // namespace bettiforge
