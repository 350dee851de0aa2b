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

#ifndef BETTIFORGE_DICKE_H
#define BETTIFORGE_DICKE_H

#include <cstdint>
#include <vector>

#include "bettiforge/graph.h"

namespace bettiforge {

struct ThresholdRun {
    std::vector<uint64_t> seeds;
    int k = 0;
    int n_seed = 0;
    std::vector<int> bits;  // b_1 .. b_{n_seed}, most significant first
    uint64_t threshold = 0;
    Mask selected = 0;  // registers whose value is >= threshold
    bool success = false;
};

// Seed register width: log2 of the smallest power of two >= c*n.
int dicke_seed_bits(int n, int c);

// Bit-by-bit threshold search: b_j = 1 when at least k registers have their
// top j bits >= b_1..b_{j-1}1. Success when exactly k registers clear the
// final threshold.
ThresholdRun dicke_threshold_run(const std::vector<uint64_t> &seeds, int k, int n_seed);

struct DickeStats {
    int n = 0;
    int k = 0;
    int c = 0;
    int n_seed = 0;
    int64_t trials = 0;
    int64_t failures = 0;
    double failure_rate = 0;
    double sigma = 0;          // binomial standard error at the observed rate
    double exact_failure = 0;  // combinatorial value
};

DickeStats dicke_success_prob(int n, int k, int c, int64_t trials, uint64_t seed);

// Probability that the k-th and (k+1)-th largest of n uniform draws from
// [0, f) coincide.
double dicke_exact_failure(int n, int k, int64_t f);

// Same quantity by running the threshold procedure on every seed tuple.
double dicke_exhaustive_failure(int n, int k, int n_seed);

}  // namespace bettiforge

#endif
