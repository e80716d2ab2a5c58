#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace phase_sentinel {

/// Worker budget: PHASE_SENTINEL_THREADS caps it, hardware concurrency is
/// the default (itself capped at 8).
inline unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned budget = std::min(hw, 8u);
    if (const char* env = std::getenv("PHASE_SENTINEL_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) budget = static_cast<unsigned>(std::min<long>(v, 64));
    }
    return budget;
}

/// Index-parallel loop with deterministic work assignment; results must be
/// written to per-index slots by the callee.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = thread_budget();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace phase_sentinel
