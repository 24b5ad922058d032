#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace qwalk {

// Worker count for data-parallel loops: QWALK_THREADS if set, otherwise the
// hardware concurrency.
int worker_count();

// Splits [begin, end) into chunks and runs body(chunk_begin, chunk_end) on a
// small thread pool. Runs inline when the range holds fewer than min_count
// items; callers with heavyweight items pass a smaller threshold.
template <class Body>
void parallel_for(std::int64_t begin, std::int64_t end, const Body& body,
                  std::int64_t min_count = 1 << 15) {
    const std::int64_t count = end - begin;
    const int workers = worker_count();
    if (count <= 0) return;
    if (workers <= 1 || count < min_count) {
        body(begin, end);
        return;
    }
    const std::int64_t chunks = static_cast<std::int64_t>(workers) * 4;
    const std::int64_t chunk = (count + chunks - 1) / chunks;
    std::atomic<std::int64_t> next{begin};
    auto run = [&] {
        for (;;) {
            const std::int64_t lo = next.fetch_add(chunk);
            if (lo >= end) return;
            body(lo, std::min(lo + chunk, end));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int i = 1; i < workers; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

}  // namespace qwalk
