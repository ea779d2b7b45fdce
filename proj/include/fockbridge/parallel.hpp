#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace fockbridge {

namespace detail {
inline std::atomic<unsigned> thread_limit_setting{0};
}

/// Caps the worker count used by the row-partitioned loops; 0 means one
/// worker per hardware thread.
inline void set_thread_limit(unsigned limit) { detail::thread_limit_setting.store(limit); }

inline unsigned thread_limit() {
    const unsigned limit = detail::thread_limit_setting.load();
    if (limit != 0) return limit;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end) over disjoint chunks of [0, count). Small ranges run
/// inline. The body must only write state owned by its own chunk.
template <typename Body>
void parallel_for(int count, Body&& body, int min_chunk = 64) {
    const int workers = static_cast<int>(std::min<long>(thread_limit(), std::max(1, count / std::max(1, min_chunk))));
    if (workers <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const int chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

}  // namespace fockbridge
