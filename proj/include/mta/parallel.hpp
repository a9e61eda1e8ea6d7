#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace mta {

inline unsigned effective_jobs(unsigned jobs) {
    if (jobs == 0) {
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1;
    }
    return jobs;
}

// Applies fn to 0..n-1 on up to `jobs` threads. Results are stored by index,
// so output order never depends on scheduling and any job count produces
// byte-identical aggregate results.
template <typename T, typename Fn>
std::vector<T> parallel_map_indexed(std::size_t n, unsigned jobs, Fn&& fn) {
    std::vector<T> out(n);
    jobs = effective_jobs(jobs);
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            out[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

} // namespace mta
