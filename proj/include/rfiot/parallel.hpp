#pragma once

#include <atomic>
#include <cstdlib>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rfiot {

/// Worker-pool width: min(n, RFIOT_THREADS or hardware concurrency).
inline unsigned worker_count(std::size_t n) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("RFIOT_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) hw = static_cast<unsigned>(v);
    }
    if (n < hw) hw = static_cast<unsigned>(n);
    return hw > 0 ? hw : 1;
}

/// Runs fn(i) for i in [0, n) on a bounded pool. Results must be written to
/// index-addressed slots by the caller; completion order is unspecified.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const unsigned workers = worker_count(n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace rfiot
