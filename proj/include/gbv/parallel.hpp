#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gbv {

/// Worker-count setting threaded through every parallel sweep. 0 means
/// "use std::thread::hardware_concurrency()".
struct Parallel {
    unsigned workers = 0;

    unsigned resolved() const {
        if (workers != 0) return workers;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
};

/// Evaluates fn(i) for i in [0, count) on a pool of threads and returns the
/// results indexed by i. Items are claimed dynamically but every result lands
/// in its own slot, so any reduction done afterwards in index order is
/// independent of the worker count.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, const Parallel& par, Fn&& fn) {
    std::vector<Result> out(count);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(par.resolved(), std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

} // namespace gbv
