#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace riskaverse {

/// Index-sharded parallel loop for embarrassingly parallel sweeps. Results
/// written by index stay in deterministic order regardless of the thread
/// count; `threads <= 1` runs inline.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([w, workers, count, &body] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace riskaverse
