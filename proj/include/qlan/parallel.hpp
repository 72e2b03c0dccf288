// Copyright 2026 The qlan Authors
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

#ifndef QLAN_PARALLEL_HPP
#define QLAN_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qlan {

inline unsigned resolve_workers(unsigned workers) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    return workers;
}

/// Calls f(i) for i in [0, count) on up to `workers` threads.
///
/// Tasks must write only to their own output slots. If tasks throw, the exception from the
/// lowest index is rethrown after all threads finish, so failures are deterministic.
template <typename F>
void parallel_for(std::size_t count, unsigned workers, F &&f) {
    workers = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    std::vector<std::exception_ptr> errors(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; i++) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back([&]() {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        f(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace qlan

#endif
