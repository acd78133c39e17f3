#pragma once
// Deterministic chunked parallel map over an integer range. The range is cut
// into fixed-size chunks; workers steal chunk indices, and the caller receives
// the results indexed by chunk so every reduction merges in ascending order.

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "gapslab/common.hpp"

namespace gapslab {

int resolved_workers(int requested);

// fn(chunk_index, lo, hi) -> R, invoked for [lo, hi) sub-ranges.
template <class R, class Fn>
std::vector<R> chunked_map(u64 lo, u64 hi, u64 chunk, int workers, Fn&& fn) {
  if (hi < lo) hi = lo;
  if (chunk == 0) chunk = 1;
  u64 span = hi - lo;
  u64 n_chunks = (span + chunk - 1) / chunk;
  std::vector<R> out(static_cast<size_t>(n_chunks));
  if (n_chunks == 0) return out;

  auto run = [&](u64 i) {
    u64 a = lo + i * chunk;
    u64 b = a + chunk < hi ? a + chunk : hi;
    out[static_cast<size_t>(i)] = fn(i, a, b);
  };

  int w = resolved_workers(workers);
  if (w > static_cast<int>(n_chunks)) w = static_cast<int>(n_chunks);
  if (w <= 1) {
    for (u64 i = 0; i < n_chunks; ++i) run(i);
    return out;
  }

  std::atomic<u64> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(w));
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        u64 i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n_chunks) break;
        try {
          run(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          next.store(n_chunks, std::memory_order_relaxed);
          break;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace gapslab
