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

#include "bettiforge/dicke.h"

#include <cmath>
#include <stdexcept>

#include "bettiforge/resources.h"
#include "bettiforge/rng.h"

namespace bettiforge {

namespace {

constexpr int64_t kTrialsPerChunk = 1 << 14;

bool threshold_success(const uint64_t *seeds, int n, int k, int n_seed) {
    uint64_t prefix = 0;
    for (int j = 1; j <= n_seed; j++) {
        uint64_t candidate = (prefix << 1) | 1;
        int shift = n_seed - j;
        int count = 0;
        for (int i = 0; i < n; i++) {
            count += (seeds[i] >> shift) >= candidate;
        }
        prefix = count >= k ? candidate : prefix << 1;
    }
    int selected = 0;
    for (int i = 0; i < n; i++) {
        selected += seeds[i] >= prefix;
    }
    return selected == k;
}

}  // namespace

int dicke_seed_bits(int n, int c) {
    if (n < 1 || c < 1) {
        throw std::invalid_argument("seed width needs n >= 1 and c >= 1");
    }
    return (int)ceil_log2((int64_t)c * n);
}

ThresholdRun dicke_threshold_run(const std::vector<uint64_t> &seeds, int k, int n_seed) {
    int n = (int)seeds.size();
    if (n > kMaxMaskVertices) {
        throw DeskScaleError("threshold runs track at most 64 registers");
    }
    if (n_seed < 1 || n_seed > 62) {
        throw std::invalid_argument("seed width must lie in [1, 62]");
    }
    if (k < 1 || k > n) {
        throw std::invalid_argument("need 1 <= k <= n");
    }
    for (uint64_t s : seeds) {
        if (s >> n_seed) {
            throw std::invalid_argument("seed value does not fit the register width");
        }
    }
    ThresholdRun run;
    run.seeds = seeds;
    run.k = k;
    run.n_seed = n_seed;
    uint64_t prefix = 0;
    for (int j = 1; j <= n_seed; j++) {
        uint64_t candidate = (prefix << 1) | 1;
        int shift = n_seed - j;
        int count = 0;
        for (uint64_t s : seeds) {
            count += (s >> shift) >= candidate;
        }
        int bit = count >= k ? 1 : 0;
        run.bits.push_back(bit);
        prefix = (prefix << 1) | (uint64_t)bit;
    }
    run.threshold = prefix;
    for (int i = 0; i < n; i++) {
        if (seeds[i] >= prefix) {
            run.selected |= Mask{1} << i;
        }
    }
    run.success = popcount(run.selected) == k;
    return run;
}

double dicke_exact_failure(int n, int k, int64_t f) {
    if (k < 1 || k > n || f < 1) {
        throw std::invalid_argument("need 1 <= k <= n and f >= 1");
    }
    double log_f = std::log((double)f);
    double total = 0.0;
    for (int64_t v = 0; v < f; v++) {
        double log_gt = v + 1 < f ? std::log((double)(f - 1 - v)) - log_f : -INFINITY;
        double log_lt = v > 0 ? std::log((double)v) - log_f : -INFINITY;
        for (int a = 0; a < k; a++) {
            for (int e = k + 1 - a; e <= n - a; e++) {
                int b = n - a - e;
                if ((a > 0 && log_gt == -INFINITY) || (b > 0 && log_lt == -INFINITY)) {
                    continue;
                }
                double lg = std::lgamma(n + 1.0) - std::lgamma(a + 1.0) - std::lgamma(e + 1.0) -
                            std::lgamma(b + 1.0) - e * log_f;
                if (a > 0) {
                    lg += a * log_gt;
                }
                if (b > 0) {
                    lg += b * log_lt;
                }
                total += std::exp(lg);
            }
        }
    }
    return total;
}

double dicke_exhaustive_failure(int n, int k, int n_seed) {
    if ((int64_t)n * n_seed > 24) {
        throw DeskScaleError("exhaustive enumeration limited to 2^24 seed tuples");
    }
    uint64_t f = uint64_t{1} << n_seed;
    uint64_t tuples = uint64_t{1} << (n * n_seed);
    std::vector<uint64_t> seeds(n);
    uint64_t failures = 0;
    for (uint64_t t = 0; t < tuples; t++) {
        uint64_t rest = t;
        for (int i = 0; i < n; i++) {
            seeds[i] = rest % f;
            rest /= f;
        }
        failures += !threshold_success(seeds.data(), n, k, n_seed);
    }
    return (double)failures / (double)tuples;
}

DickeStats dicke_success_prob(int n, int k, int c, int64_t trials, uint64_t seed) {
    if (trials <= 0) {
        throw std::invalid_argument("trials must be positive");
    }
    if (k < 1 || k > n) {
        throw std::invalid_argument("need 1 <= k <= n");
    }
    DickeStats s;
    s.n = n;
    s.k = k;
    s.c = c;
    s.n_seed = dicke_seed_bits(n, c);
    s.trials = trials;
    if (s.n_seed > 62) {
        throw std::invalid_argument("seed register too wide");
    }
    uint64_t f = uint64_t{1} << s.n_seed;
    int64_t chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
    std::vector<int64_t> failures(chunks, 0);
    parallel_for((size_t)chunks, [&](size_t chunk) {
        Rng rng = Rng::derive(seed, chunk);
        std::vector<uint64_t> seeds(n);
        int64_t begin = (int64_t)chunk * kTrialsPerChunk;
        int64_t end = std::min(trials, begin + kTrialsPerChunk);
        int64_t local = 0;
        for (int64_t t = begin; t < end; t++) {
            for (int i = 0; i < n; i++) {
                seeds[i] = rng.below(f);
            }
            local += !threshold_success(seeds.data(), n, k, s.n_seed);
        }
        failures[chunk] = local;
    });
    for (int64_t v : failures) {
        s.failures += v;
    }
    s.failure_rate = (double)s.failures / (double)trials;
    s.sigma = std::sqrt(s.failure_rate * (1.0 - s.failure_rate) / (double)trials);
    s.exact_failure = dicke_exact_failure(n, k, (int64_t)f);
    return s;
}

}  // namespace bettiforge
