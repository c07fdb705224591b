#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace lk {

// LK_THREADS caps the worker count; defaults to the hardware concurrency.
inline int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LK_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap > 0) n = n > 0 ? std::min(n, cap) : cap;
        } catch (const std::exception&) {
        }
    }
    return std::max(1, n);
}

// Runs fn(i) for i in [0, n) on contiguous blocks; results must be written to
// per-index slots so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(int n, Fn&& fn) {
    const int workers = std::min(worker_count(), std::max(n, 1));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
        const int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (int i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace lk
