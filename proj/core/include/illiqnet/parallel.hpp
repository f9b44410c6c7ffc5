#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace illiqnet {

inline int effective_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

/// Run fn(i) for i in [0, n) on `workers` threads. Work is claimed through an
/// atomic counter in chunks; callers that need deterministic output must write
/// results into per-index slots (all call sites here do).
template <typename Fn>
void parallel_for(size_t n, int workers, Fn&& fn, size_t chunk = 1) {
    workers = effective_workers(workers);
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (chunk == 0) chunk = 1;
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t begin = next.fetch_add(chunk, std::memory_order_relaxed);
            if (begin >= n) return;
            size_t end = begin + chunk < n ? begin + chunk : n;
            for (size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers) - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace illiqnet
