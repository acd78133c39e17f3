#pragma once
// Budgets and the execution context threaded through heavy operations.

#include <atomic>

#include "gapslab/common.hpp"

namespace gapslab {

struct Limits {
  u64 sieve_limit = u64(1) << 40;      // largest value any sieve may touch
  u64 segment_len = u64(1) << 22;      // internal sieve block length
  u64 max_segment_len = u64(1) << 27;  // cap on a single materialized SieveSegment
  u64 combinatorial_cap = 100000000;   // C(h,k) budget for tuple enumeration
  u64 bv_x_cap = 10000000;             // cost guard for the progression discrepancy probe
};

// Run counters surfaced in CLI manifests. Relaxed increments only.
struct Counters {
  std::atomic<u64> segments_built{0};
  std::atomic<u64> tuples_enumerated{0};
  std::atomic<u64> moduli_scanned{0};
  std::atomic<u64> primes_visited{0};
};

// Worker pool description. Chunk boundaries are fixed by `chunk` alone, and all
// reductions merge in ascending chunk order, so results do not depend on `workers`.
struct Exec {
  int workers = 0;  // 0 = hardware concurrency
  u64 chunk = u64(1) << 22;
  Counters* counters = nullptr;

  int resolved_workers() const;

  void add_segments(u64 n) const {
    if (counters) counters->segments_built.fetch_add(n, std::memory_order_relaxed);
  }
  void add_tuples(u64 n) const {
    if (counters) counters->tuples_enumerated.fetch_add(n, std::memory_order_relaxed);
  }
  void add_moduli(u64 n) const {
    if (counters) counters->moduli_scanned.fetch_add(n, std::memory_order_relaxed);
  }
  void add_primes(u64 n) const {
    if (counters) counters->primes_visited.fetch_add(n, std::memory_order_relaxed);
  }
};

}  // namespace gapslab
