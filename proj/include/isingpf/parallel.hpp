#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace isingpf {

// Runs fn(0) .. fn(count - 1), splitting the index range into contiguous
// chunks across up to `threads` workers (0 means hardware concurrency).
// Each index is visited exactly once and fn must only touch its own slot of
// any shared output, so results are identical for any thread count.  If a
// worker throws, the first exception (lowest chunk) is rethrown after all
// workers finish.
inline void parallel_for(int count, const std::function<void(int)>& fn,
                         int threads = 0) {
    if (count <= 0) return;
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    if (threads > count) threads = count;

    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const int base = count / threads;
    const int extra = count % threads;
    int begin = 0;
    for (int w = 0; w < threads; ++w) {
        const int len = base + (w < extra ? 1 : 0);
        const int end = begin + len;
        workers.emplace_back([begin, end, &fn, &errors, w] {
            try {
                for (int i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& worker : workers) worker.join();
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
}

}  // namespace isingpf
