#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ml {

/// Calls fn(i) for every i in [begin, end) on up to `jobs` threads.
///
/// Indices are dealt round-robin so that ranges whose cost grows with i stay
/// balanced. Each index is visited exactly once; callers write only to
/// slot i, so the result does not depend on `jobs`.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned jobs, Fn &&fn)
{
    if (end <= begin) {
        return;
    }
    const std::size_t count = end - begin;
    const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), count);
    if (workers <= 1 || count < 16) {
        for (std::size_t i = begin; i < end; ++i) {
            fn(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = begin + w; i < end; i += workers) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace ml
