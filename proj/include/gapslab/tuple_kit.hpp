#pragma once
// Offset tuples H = {h_1 < ... < h_k}, residue coverage nu_H(p), admissibility,
// the product polynomial P_H(n), and enumeration of admissible subsets of [1, h].

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gapslab/common.hpp"
#include "gapslab/config.hpp"
#include "gapslab/prime_engine.hpp"

namespace gapslab {

class Tuple {
 public:
  explicit Tuple(std::vector<u64> offsets);
  static Tuple parse(std::string_view csv);  // "0,2,6"

  const std::vector<u64>& offsets() const { return offsets_; }
  u64 k() const { return offsets_.size(); }
  u64 diameter() const { return offsets_.back() - offsets_.front(); }
  u64 min_offset() const { return offsets_.front(); }
  u64 max_offset() const { return offsets_.back(); }
  Tuple shifted(u64 c) const;
  Tuple with(u64 extra) const;  // H union {extra}; no-op if already present
  bool contains(u64 v) const;
  std::string to_string() const;
  bool operator==(const Tuple& o) const { return offsets_ == o.offsets_; }

 private:
  std::vector<u64> offsets_;
};

// |{h_i mod p}|. Validates that p is prime.
u32 nu_mod_p(const Tuple& H, u64 p);
// Same without the primality check, for callers iterating a prime list.
u32 nu_mod_p_unchecked(const Tuple& H, u64 p);

// nu_H(p) < p for every prime p <= k (coverage is impossible for p > k).
bool is_admissible(const Tuple& H);

// Product of (n + h_i); errors if it would exceed 128 bits.
u128 poly_value(const Tuple& H, u64 n);

// Admissible k-subsets of {1, ..., h}, each exactly once, lexicographic order.
// Errors when C(h, k) exceeds limits.combinatorial_cap.
void for_each_admissible(u64 h, u64 k, const Limits& limits, Counters* counters,
                         const std::function<void(const Tuple&)>& fn);
std::vector<Tuple> enumerate_admissible(u64 h, u64 k, const Limits& limits = {},
                                        Counters* counters = nullptr);

// Minimal diameter of an admissible k-tuple, exhaustive search; 2 <= k <= 8.
u64 min_diameter(u64 k);

// True iff no prime p <= z divides any n + h_i, checked via single spf lookups.
bool smooth_coprime(const Tuple& H, u64 n, u64 z, const SieveSegment& seg);

}  // namespace gapslab
