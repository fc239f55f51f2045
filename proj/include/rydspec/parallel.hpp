#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rydspec {

// Worker count: RYDSPEC_THREADS if set (clamped to >= 1), else the hardware
// concurrency.  A value of 1 disables threading entirely.
inline int max_threads() {
    if (const char* env = std::getenv("RYDSPEC_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Run f(i) for i in [0, n).  Each index is computed exactly once by exactly
// one worker, so any per-index output is bitwise independent of the thread
// count.  The first exception thrown by a worker is rethrown on the caller.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    const int threads =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr error;

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!error)
                    error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace rydspec
