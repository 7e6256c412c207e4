#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace relclass {

/// Worker count: explicit request, else RELCLASS_JOBS, else the hardware.
inline unsigned effective_jobs(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RELCLASS_JOBS")) {
        unsigned long v = std::strtoul(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Applies fn to every item and returns the results in input order,
/// independent of scheduling: workers pull indices from a shared counter and
/// write to their own slot.  The first worker exception is rethrown.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, unsigned jobs, Fn fn)
    -> std::vector<decltype(fn(items.front()))> {
    using Out = decltype(fn(items.front()));
    std::vector<Out> results(items.size());
    if (items.empty()) return results;

    unsigned workers = effective_jobs(jobs);
    if (workers > items.size()) workers = static_cast<unsigned>(items.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto body = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= items.size()) break;
            try {
                results[i] = fn(items[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace relclass
