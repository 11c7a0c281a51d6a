#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qmf {

// Runs task(i) for i in [0, count) on up to `workers` threads. Callers that
// need deterministic results write into slot i and combine afterwards in
// index order.
inline void parallel_for_index(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            task(i);
        }
    };
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::vector<std::thread> pool;
    pool.reserve(n_threads - 1);
    for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

inline int default_workers() {
    if (const char* env = std::getenv("QMF_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

}  // namespace qmf
