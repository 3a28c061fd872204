#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace wlanopt {

/// Run body(i) for i in [0, n) on up to `jobs` threads (0 = hardware count).
/// Each index runs exactly once; callers own any per-index output slots, so
/// results are identical regardless of scheduling.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min(jobs, n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace wlanopt
