#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace vbdg {

namespace detail {
inline std::atomic<unsigned>& thread_cap() {
    static std::atomic<unsigned> cap{std::max(1u, std::thread::hardware_concurrency())};
    return cap;
}
} // namespace detail

inline void set_max_threads(unsigned n) { detail::thread_cap().store(std::max(1u, n)); }
inline unsigned max_threads() { return detail::thread_cap().load(); }

/// Runs fn(i) for i in [begin, end), split into contiguous chunks. Every index is
/// processed exactly once by exactly one thread, so results written per index do
/// not depend on the thread count. `grain` is the minimum chunk length.
template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& fn, std::size_t grain = 16) {
    if (end <= begin) return;
    const std::size_t n = end - begin;
    const std::size_t workers = std::min<std::size_t>(max_threads(), (n + grain - 1) / grain);
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    const std::size_t hi0 = std::min(end, begin + chunk);
    for (std::size_t i = begin; i < hi0; ++i) fn(i);
}

} // namespace vbdg
