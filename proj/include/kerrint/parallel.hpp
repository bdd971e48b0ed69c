#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kerrint {

/// Runs fn(i) for i in [0, count) on up to `threads` workers (<= 0 means
/// hardware concurrency). Callers get determinism by writing to preassigned
/// slots; the first exception wins and is rethrown after the join.
template <typename F>
void parallel_for(std::size_t count, int threads, F&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t want = threads > 0 ? static_cast<std::size_t>(threads)
                                   : static_cast<std::size_t>(hw > 0 ? hw : 2);
    want = std::min(want, count);
    if (want <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(want);
    for (std::size_t w = 0; w < want; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace kerrint
