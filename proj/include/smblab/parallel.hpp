#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace smblab {

/// Worker count: SMB_LAB_THREADS if set (clamped to >= 1), else hardware
/// parallelism. Re-read on every call so tests can change it between runs.
int worker_count();

/// Run body(i) for i in [0, count) on a worker pool. Each index must write
/// only to its own output slot: results are then identical for any worker
/// count, which the report layer relies on for byte-identical reruns.
template <typename Body>
void parallel_for(int64_t count, Body&& body) {
    int workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    if (workers > count) workers = static_cast<int>(count);
    std::atomic<int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace smblab
