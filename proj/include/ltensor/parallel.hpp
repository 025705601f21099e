// Minimal slice-parallel execution helper. Operations that loop over
// independent matrix slices may fan the loop out over a bounded number of
// threads; results are written to disjoint regions, so the output does not
// depend on the thread count.
#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "ltensor/tensor_fwd.hpp"

namespace ltensor {

namespace detail {
inline std::atomic<int>& max_threads_storage() {
    static std::atomic<int> n{1};
    return n;
}
} // namespace detail

/// Caps the number of worker threads used by slice loops. 1 (the default)
/// keeps everything sequential and bit-reproducible.
inline void set_max_threads(int n) { detail::max_threads_storage().store(n < 1 ? 1 : n); }

inline int max_threads() { return detail::max_threads_storage().load(); }

namespace detail {

// Runs f(i) for i in [0, n). Chunks the range when more than one thread is
// allowed and the range is worth splitting. The first exception thrown by a
// worker is rethrown on the calling thread.
template <typename F>
void parallel_for(Index n, F&& f) {
    const int threads = max_threads();
    if (threads <= 1 || n < 2) {
        for (Index i = 0; i < n; ++i) f(i);
        return;
    }
    const int workers = static_cast<int>(n < static_cast<Index>(threads) ? n : threads);
    std::atomic<Index> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const Index i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace detail
} // namespace ltensor
