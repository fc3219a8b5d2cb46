#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace camfolio {

// Index-striped parallel loop. Each index writes only its own preallocated
// slot, so the result is identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t t = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::size_t w = 0; w < t; ++w) {
        pool.emplace_back([&fn, w, t, count]() {
            for (std::size_t i = w; i < count; i += t) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace camfolio
