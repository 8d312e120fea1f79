#pragma once

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qinfo {

// Worker cap: min(hardware threads, QINFO_THREADS when set).
inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("QINFO_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v <= 0) throw std::invalid_argument("QINFO_THREADS must be a positive integer");
        if (static_cast<unsigned>(v) < n) n = static_cast<unsigned>(v);
    }
    return n;
}

// Runs fn(i) for i in [0, n).  Each index must be independent (per-index
// derived seeds); results are written by index so output is deterministic
// regardless of the worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = worker_count();
    if (workers <= 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace qinfo
