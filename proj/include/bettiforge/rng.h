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

#ifndef BETTIFORGE_RNG_H
#define BETTIFORGE_RNG_H

#include <cstddef>
#include <cstdint>
#include <functional>

namespace bettiforge {

inline uint64_t splitmix64(uint64_t &state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64. Output is identical on every
// platform, which keeps generated graphs and Monte-Carlo runs replayable.
class Rng {
   public:
    explicit Rng(uint64_t seed = 0) {
        uint64_t s = seed;
        for (auto &w : s_) {
            w = splitmix64(s);
        }
    }

    uint64_t next() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return (double)(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound), rejection sampled.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) {
            return 0;
        }
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % bound;
    }

    // Independent stream for work item `index`.
    static Rng derive(uint64_t seed, uint64_t index) {
        uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
        return Rng(splitmix64(s));
    }

   private:
    static uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    uint64_t s_[4];
};

// Number of worker threads, honoring BETTIFORGE_THREADS.
int thread_count();
// Runs body(i) for i in [0, count) on up to thread_count() threads.
void parallel_for(size_t count, const std::function<void(size_t)> &body);

}  // namespace bettiforge

#endif
