#ifndef RAYCLASS_PARALLEL_HPP
#define RAYCLASS_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rayclass::detail {

inline unsigned default_threads()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/* Calls f(i) for i in [0, n) on up to `threads` workers.  Each index is
 * visited exactly once; results must be written to per-index slots so
 * the outcome does not depend on scheduling.  The first exception thrown
 * by any f(i) is rethrown after all workers stop.
 */
template <typename F>
void parallel_for(std::size_t n, F && f, unsigned threads = 0)
{
    if (threads == 0) threads = default_threads();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

} // namespace rayclass::detail

#endif
