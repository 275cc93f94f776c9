#ifndef TRAPSCALE_PARALLEL_HPP
#define TRAPSCALE_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace trapscale::parallel {

// Worker count: TRAPSCALE_WORKERS caps (and can reduce to 1); otherwise the
// hardware concurrency.
inline int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* cap = std::getenv("TRAPSCALE_WORKERS")) {
        const int c = std::atoi(cap);
        if (c >= 1 && c < n) n = c;
        if (c >= 1 && c >= n) n = c;
    }
    return n;
}

// Runs body(i) for i in [0,n).  Each index is processed exactly once; bodies
// must confine writes to their own slot so results are independent of
// scheduling.  The first exception thrown by a body is rethrown.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& body) {
    if (workers <= 0) workers = worker_count();
    if (workers == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> threads;
    const int used = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(workers)));
    threads.reserve(static_cast<std::size_t>(used));
    for (int w = 0; w < used; ++w) {
        threads.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    body(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace trapscale::parallel

#endif
