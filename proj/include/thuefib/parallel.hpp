// Deterministic fan-out over a contiguous n-range: results land in order
// regardless of the worker count.

#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace thuefib {

template <class T, class F>
std::vector<T> parallel_map_range(long lo, long hi, int jobs, F&& fn) {
    if (hi < lo) return {};
    size_t count = (size_t)(hi - lo + 1);
    std::vector<T> out(count);
    if (jobs <= 1) {
        for (size_t i = 0; i < count; ++i) out[i] = fn(lo + (long)i);
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                out[i] = fn(lo + (long)i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nw = std::min<int>(jobs, (int)count);
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace thuefib
