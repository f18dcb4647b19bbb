// Copyright 2026 The qdswap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace qdswap {

/// Worker count: explicit request, else QDSWAP_THREADS, else hardware.
inline unsigned resolve_worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QDSWAP_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Fixed-size sample blocks processed by a worker pool. The block layout
/// depends only on n, so any aggregation done per block and merged in block
/// order gives results that are independent of the worker count.
inline constexpr std::uint64_t kMcBlockSize = 8192;

/// Runs fn(block_index, begin, end) over [0, n) split into kMcBlockSize
/// blocks. fn must only write to block-owned storage.
template <typename Fn>
void for_each_block(std::uint64_t n, unsigned workers, Fn&& fn) {
    const std::uint64_t n_blocks = (n + kMcBlockSize - 1) / kMcBlockSize;
    workers = resolve_worker_count(workers);
    if (workers <= 1 || n_blocks <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b)
            fn(b, b * kMcBlockSize, std::min(n, (b + 1) * kMcBlockSize));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto work = [&] {
        try {
            for (std::uint64_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
                if (failed.load(std::memory_order_relaxed)) return;
                fn(b, b * kMcBlockSize, std::min(n, (b + 1) * kMcBlockSize));
            }
        } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qdswap
