#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

#include "padic.hpp"

namespace gkl {

/// Worker-pool size: explicit setting, else GKL_THREADS, else 1.
inline unsigned& thread_count_ref() {
    static unsigned n = [] {
        if (const char* e = std::getenv("GKL_THREADS")) {
            long v = std::atol(e);
            if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
        }
        return 1u;
    }();
    return n;
}

inline unsigned thread_count() { return thread_count_ref(); }
inline void set_thread_count(unsigned n) { thread_count_ref() = n ? n : 1; }

/**
 * Deterministic parallel reduction over [0, n).  The range is cut into
 * fixed-size chunks; each chunk is evaluated sequentially by chunk_fn and
 * the partial results are combined in chunk-index order, so the result
 * (including float rounding) is identical for every thread count.
 */
template <class T, class ChunkFn, class Combine>
T parallel_reduce(u64 n, T init, ChunkFn chunk_fn, Combine comb) {
    constexpr u64 kChunk = 4096;
    u64 nchunks = (n + kChunk - 1) / kChunk;
    if (nchunks == 0) return init;
    unsigned workers = thread_count();
    std::vector<T> partials(nchunks, init);
    if (workers <= 1 || nchunks == 1) {
        for (u64 ci = 0; ci < nchunks; ++ci)
            partials[ci] = chunk_fn(ci * kChunk, std::min(n, (ci + 1) * kChunk));
    } else {
        std::atomic<u64> next{0};
        auto work = [&] {
            for (;;) {
                u64 ci = next.fetch_add(1);
                if (ci >= nchunks) break;
                partials[ci] = chunk_fn(ci * kChunk, std::min(n, (ci + 1) * kChunk));
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    T acc = init;
    for (u64 ci = 0; ci < nchunks; ++ci) acc = comb(acc, partials[ci]);
    return acc;
}

}  // namespace gkl
