/*
 * Copyright 2026 The argstat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace argstat {

// 0 means "use the default", which is ARGSTAT_THREADS or the hardware count.
unsigned resolve_threads(unsigned requested);

// Runs body(chunk, begin, end) over [0, n) split into `chunks` contiguous
// pieces. The split depends only on (n, chunks), never on the thread count,
// so any per-chunk result is independent of how the work was scheduled.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t chunks, unsigned threads, Body body) {
    if (n == 0) return;
    chunks = std::max<std::size_t>(1, std::min(chunks, n));
    auto range = [&](std::size_t c) {
        return std::pair<std::size_t, std::size_t>{n * c / chunks, n * (c + 1) / chunks};
    };
    threads = std::max(1u, std::min<unsigned>(resolve_threads(threads), chunks));
    if (threads == 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            auto [b, e] = range(c);
            body(c, b, e);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < chunks; c += threads) {
                auto [b, e] = range(c);
                body(c, b, e);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace argstat
