#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace geomstat {

// Worker cap from GEOMOMENTS_THREADS; 0 or unset means one worker per core.
inline unsigned thread_count() {
    if (const char* env = std::getenv("GEOMOMENTS_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return unsigned(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Work-stealing loop over [0, n). fn(i) must write only to per-index slots;
// callers reduce those slots in index order so results stay deterministic.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    std::size_t tc = std::min<std::size_t>(thread_count(), n);
    if (tc <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(tc);
    for (std::size_t t = 0; t < tc; ++t)
        pool.emplace_back([&] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace geomstat
