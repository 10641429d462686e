#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace covrad {

/// Splits [0, count) into `workers` contiguous ranges and calls fn(begin, end)
/// on each from its own thread. Ranges depend only on (count, workers), so
/// callers writing disjoint slices get identical results for any pool size.
/// The first exception thrown by a worker is rethrown after all have joined.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    const std::size_t w = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1,
                                                  std::max<std::size_t>(count, 1));
    if (w == 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(w);
    for (std::size_t i = 0; i < w; ++i) {
        const std::size_t begin = count * i / w;
        const std::size_t end = count * (i + 1) / w;
        threads.emplace_back([&, i, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace covrad
