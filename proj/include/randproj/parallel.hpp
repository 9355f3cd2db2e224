#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace randproj {

/// Runs fn(i) for i in [0, count) on up to `threads` worker threads.
///
/// Tasks are claimed in index order from a shared counter, so fn must write
/// only to slot i of its output for results to be independent of scheduling.
/// The first exception thrown by any task is rethrown on the caller.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::mutex mutex;
    std::size_t next = 0;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard lock(mutex);
                if (next >= count || failure) return;
                i = next++;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace randproj
