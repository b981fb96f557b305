#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "ptkitaev/errors.hpp"

namespace ptkitaev {

// 0 means automatic: PTKITAEV_WORKERS if set to a positive integer,
// otherwise hardware concurrency, otherwise 1.
inline int resolve_workers(int requested) {
    if (requested < 0)
        throw ParameterError("resolve_workers: worker count must be >= 0");
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PTKITAEV_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for every i in [0, count). Tasks must write only to slots
// owned by their index; the schedule is a shared atomic counter, so the
// result cannot depend on thread interleaving. After all threads join,
// the first captured exception (if any) is rethrown on the caller.
template <typename Fn>
void parallel_for_indexed(int count, int workers, Fn&& fn) {
    if (count < 0)
        throw ParameterError("parallel_for_indexed: negative task count");
    if (count == 0) return;
    const int n_threads = std::min(resolve_workers(workers), count);
    if (n_threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace ptkitaev
