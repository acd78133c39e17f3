#pragma once
// Segmented sieve of Eratosthenes with a windowed smallest-prime-factor table.
// Serves primality, ordered prime iteration, theta weights, von Mangoldt sums
// over progressions, and Chebyshev summaries to every other module.

#include <vector>

#include "gapslab/common.hpp"
#include "gapslab/config.hpp"
#include "gapslab/errors.hpp"

namespace gapslab {

// Primality bitmap plus smallest-prime-factor table over [base, base+len).
// spf is stored raw in 32 bits: 0 means the value itself is prime, 1 is used
// for values <= 1, anything else is the factor. Below the 2^40 sieve limit a
// composite always has a factor < 2^20, so 32 bits never truncate.
struct SieveSegment {
  u64 base = 0;
  u64 len = 0;
  std::vector<u64> bits;  // bit i (LSB-first in each word): base+i is prime
  std::vector<u32> spf;

  bool covers(u64 n) const { return n >= base && n - base < len; }
  bool is_prime(u64 n) const {
    u64 i = n - base;
    return (bits[i >> 6] >> (i & 63)) & 1u;
  }
  u64 smallest_factor(u64 n) const {
    u32 r = spf[static_cast<size_t>(n - base)];
    return r ? r : n;
  }
  bool operator==(const SieveSegment& o) const = default;
};

struct ChebyshevTable {
  u64 x = 0;
  double psi = 0.0;        // sum of Lambda(n), n <= x
  double theta_sum = 0.0;  // sum of log p, p <= x
  u64 pi = 0;
};

class PrimeEngine {
 public:
  explicit PrimeEngine(const Limits& limits = {});

  const Limits& limits() const { return limits_; }
  u64 limit() const { return limits_.sieve_limit; }

  // Full segment: primality bitmap + spf table. Deterministic.
  SieveSegment build_segment(u64 base, u64 len, Counters* counters = nullptr) const;

  // Primality bitmap only (cheaper; used by census scans).
  void sieve_bits(u64 base, u64 len, std::vector<u64>& bits) const;

  bool is_prime(u64 n) const;          // trial division against base primes
  double theta(u64 m) const;           // log m if m prime, else 0
  u64 next_prime(u64 m) const;         // smallest prime > m
  double psi_progression(u64 x, u64 q, u64 a) const;
  ChebyshevTable chebyshev(u64 x) const;

  const std::vector<u32>& base_primes() const { return base_primes_; }

  // Calls fn(p) for every prime p in [lo, hi), ascending. Sequential.
  template <class Fn>
  void for_primes(u64 lo, u64 hi, Fn&& fn) const {
    if (hi <= lo) return;
    check_range(lo, hi - lo);
    if (lo < 2) lo = 2;
    std::vector<u64> buf;
    for (u64 a = lo; a < hi; a += limits_.segment_len) {
      u64 b = a + limits_.segment_len < hi ? a + limits_.segment_len : hi;
      sieve_bits(a, b - a, buf);
      scan_bits(a, buf, fn);
    }
  }

  template <class Fn>
  static void scan_bits(u64 base, const std::vector<u64>& bits, Fn&& fn) {
    for (size_t w = 0; w < bits.size(); ++w) {
      u64 word = bits[w];
      while (word) {
        int t = __builtin_ctzll(word);
        fn(base + (u64(w) << 6) + u64(t));
        word &= word - 1;
      }
    }
  }

 private:
  Limits limits_;
  std::vector<u32> base_primes_;  // all primes <= sqrt(sieve_limit)

  void check_range(u64 base, u64 len) const;
  void sieve_block(u64 base, u64 len, u64* bits, u32* spf) const;
};

}  // namespace gapslab
