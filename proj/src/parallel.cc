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

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "bettiforge/rng.h"

namespace bettiforge {

int thread_count() {
    int hw = (int)std::max(1u, std::thread::hardware_concurrency());
    const char *env = std::getenv("BETTIFORGE_THREADS");
    if (env != nullptr && *env != '\0') {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) {
            return (int)std::min<long>(v, 1024);
        }
    }
    return hw;
}

void parallel_for(size_t count, const std::function<void(size_t)> &body) {
    size_t workers = std::min<size_t>(count, (size_t)thread_count());
    if (workers <= 1) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; w++) {
        threads.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace bettiforge
