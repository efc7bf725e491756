#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace nlew {

// Runs fn(i) for i in [0, n) across hardware threads. Callers write results
// into index-addressed slots, so output order is independent of scheduling.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 2 || n < 64) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    workers = std::min(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &fn] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace nlew
