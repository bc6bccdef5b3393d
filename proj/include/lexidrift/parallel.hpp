#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lexidrift {

// Runs fn(begin, end) over contiguous chunks of [0, n). With workers <= 1 the
// call is a plain loop. Chunk boundaries depend on the worker count, so any
// caller that needs worker-count-independent results must combine per-item
// outputs in item order (all call sites here do).
template <typename Fn>
void parallel_for(size_t n, int workers, Fn&& fn) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        fn(size_t{0}, n);
        return;
    }
    size_t nthreads = std::min<size_t>(static_cast<size_t>(workers), n);
    size_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (size_t t = 0; t < nthreads; ++t) {
        size_t begin = t * chunk;
        size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end]() {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace lexidrift
