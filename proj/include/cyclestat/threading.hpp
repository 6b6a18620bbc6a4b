#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace cyclestat {

/// Worker budget: CYCLESTAT_THREADS caps the count, hardware otherwise.
/// Every parallel reduction in this library is commutative and exact, so
/// results never depend on the budget.
inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CYCLESTAT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < 1024) return static_cast<unsigned>(v);
    }
    return hw;
}

/// Runs fn(worker_index, begin, end) over a contiguous split of [0, total).
template <class F>
void parallel_ranges(std::uint64_t total, F&& fn) {
    unsigned workers = thread_budget();
    if (workers > total) workers = total ? static_cast<unsigned>(total) : 1;
    if (workers <= 1) {
        fn(0u, std::uint64_t(0), total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t chunk = total / workers, extra = total % workers, begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t len = chunk + (w < extra ? 1 : 0);
        std::uint64_t b = begin, e = begin + len;
        begin = e;
        pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
    }
    for (auto& t : pool) t.join();
}

} // namespace cyclestat
