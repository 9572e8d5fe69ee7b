#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace cotype {

// Worker cap: COTYPE_BENCH_THREADS if set (>= 1), otherwise hardware concurrency.
inline unsigned thread_cap() {
  if (const char* env = std::getenv("COTYPE_BENCH_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Deterministic chunked map/reduce: chunk boundaries depend only on `count`,
// never on the worker count, and partial results merge in chunk order, so the
// output is identical at any thread cap (bit-identical even for doubles).
template <class R, class PerChunk, class Merge>
R chunked_mapreduce(std::size_t count, R init, PerChunk&& per_chunk, Merge&& merge) {
  constexpr std::size_t kChunk = 4096;
  if (count == 0) return init;
  std::size_t nchunks = (count + kChunk - 1) / kChunk;
  unsigned workers = thread_cap();
  if (workers <= 1 || nchunks <= 1) {
    R acc = init;
    for (std::size_t c = 0; c < nchunks; ++c) {
      std::size_t b = c * kChunk, e = std::min(count, b + kChunk);
      acc = merge(std::move(acc), per_chunk(b, e));
    }
    return acc;
  }
  std::vector<R> partial(nchunks, init);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      std::size_t b = c * kChunk, e = std::min(count, b + kChunk);
      partial[c] = per_chunk(b, e);
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, nchunks));
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  R acc = init;
  for (std::size_t c = 0; c < nchunks; ++c) acc = merge(std::move(acc), std::move(partial[c]));
  return acc;
}

// Sum of g(i) over i in [0, count), deterministic as above.
template <class S, class G>
S chunked_sum(std::size_t count, G&& g) {
  return chunked_mapreduce(
      count, S{},
      [&](std::size_t b, std::size_t e) {
        S acc{};
        for (std::size_t i = b; i < e; ++i) acc += g(i);
        return acc;
      },
      [](S a, S b) {
        a += b;
        return a;
      });
}

}  // namespace cotype
