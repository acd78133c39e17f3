#pragma once
// Chunked scan over consecutive-prime pairs (p, p') with p in [lo, hi).
// Pairs interior to a chunk go into that chunk's accumulator; pairs straddling
// a boundary are visited during the ordered merge. The final prime's successor
// is found past hi, so every p gets its true next prime.
//
// Acc requirements: default-constructible, visit(p, p_next), merge(const Acc&).

#include "gapslab/config.hpp"
#include "gapslab/parallel.hpp"
#include "gapslab/prime_engine.hpp"

namespace gapslab {

template <class Acc>
void scan_prime_pairs(const PrimeEngine& engine, u64 lo, u64 hi, const Exec& exec, Acc& total) {
  if (hi <= lo) return;

  struct ChunkOut {
    Acc acc{};
    u64 first = 0;
    u64 last = 0;
  };

  auto outs = chunked_map<ChunkOut>(lo, hi, exec.chunk, exec.workers, [&](u64, u64 a, u64 b) {
    ChunkOut out;
    std::vector<u64> bits;
    engine.sieve_bits(a, b - a, bits);
    exec.add_segments(1);
    u64 prev = 0;
    u64 seen = 0;
    PrimeEngine::scan_bits(a, bits, [&](u64 p) {
      if (!out.first) out.first = p;
      if (prev) out.acc.visit(prev, p);
      prev = p;
      ++seen;
    });
    out.last = prev;
    exec.add_primes(seen);
    return out;
  });

  u64 pending = 0;
  for (const auto& o : outs) {
    if (!o.first) continue;
    if (pending) total.visit(pending, o.first);
    total.merge(o.acc);
    pending = o.last;
  }
  if (pending) total.visit(pending, engine.next_prime(pending));
}

}  // namespace gapslab
