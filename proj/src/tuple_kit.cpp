#include "gapslab/tuple_kit.hpp"

#include <algorithm>

#include "gapslab/errors.hpp"

namespace gapslab {

namespace {

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 p = 3; p * p <= n; p += 2)
    if (n % p == 0) return false;
  return true;
}

// C(h, k) clamped at cap+1 to avoid overflow.
u64 binomial_capped(u64 h, u64 k, u64 cap) {
  if (k > h) return 0;
  k = std::min(k, h - k);
  u128 r = 1;
  for (u64 i = 1; i <= k; ++i) {
    r = r * (h - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<u64>(r);
}

}  // namespace

Tuple::Tuple(std::vector<u64> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) fail_validation("tuple must contain at least one offset");
  for (size_t i = 1; i < offsets_.size(); ++i) {
    if (offsets_[i] <= offsets_[i - 1])
      fail_validation("tuple offsets must be distinct and strictly increasing (got " +
                      std::to_string(offsets_[i - 1]) + " before " +
                      std::to_string(offsets_[i]) + ")");
  }
}

Tuple Tuple::parse(std::string_view csv) {
  std::vector<u64> offs;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    std::string_view tok = csv.substr(pos, comma == std::string_view::npos ? csv.size() - pos
                                                                           : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) fail_validation("empty offset in tuple string");
    u64 v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') fail_validation("tuple offsets must be non-negative integers");
      if (v > (~u64(0) - u64(c - '0')) / 10) fail_validation("tuple offset out of range");
      v = v * 10 + u64(c - '0');
    }
    offs.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Tuple(std::move(offs));
}

Tuple Tuple::shifted(u64 c) const {
  std::vector<u64> offs(offsets_);
  for (auto& v : offs) v += c;
  return Tuple(std::move(offs));
}

Tuple Tuple::with(u64 extra) const {
  if (contains(extra)) return *this;
  std::vector<u64> offs(offsets_);
  offs.insert(std::upper_bound(offs.begin(), offs.end(), extra), extra);
  return Tuple(std::move(offs));
}

bool Tuple::contains(u64 v) const {
  return std::binary_search(offsets_.begin(), offsets_.end(), v);
}

std::string Tuple::to_string() const {
  std::string s;
  for (size_t i = 0; i < offsets_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(offsets_[i]);
  }
  return s;
}

u32 nu_mod_p_unchecked(const Tuple& H, u64 p) {
  if (p > H.diameter()) return static_cast<u32>(H.k());  // pairwise differences < p
  u32 count = 0;
  if (p <= 64) {
    u64 mask = 0;
    for (u64 h : H.offsets()) mask |= u64(1) << (h % p);
    count = static_cast<u32>(__builtin_popcountll(mask));
  } else {
    std::vector<u8> seen(static_cast<size_t>(p), 0);
    for (u64 h : H.offsets()) {
      u8& s = seen[static_cast<size_t>(h % p)];
      if (!s) {
        s = 1;
        ++count;
      }
    }
  }
  return count;
}

u32 nu_mod_p(const Tuple& H, u64 p) {
  if (!is_prime_u64(p)) fail_validation("non-prime modulus " + std::to_string(p));
  return nu_mod_p_unchecked(H, p);
}

bool is_admissible(const Tuple& H) {
  u64 k = H.k();
  for (u64 p = 2; p <= k; ++p) {
    if (!is_prime_u64(p)) continue;
    if (nu_mod_p_unchecked(H, p) >= p) return false;
  }
  return true;
}

u128 poly_value(const Tuple& H, u64 n) {
  if (n < 1) fail_validation("poly_value requires n >= 1");
  u128 acc = 1;
  for (u64 h : H.offsets()) {
    u128 factor = u128(n) + h;
    if (acc > ~u128(0) / factor)
      fail_validation("poly_value overflow: product exceeds 128-bit magnitude");
    acc *= factor;
  }
  return acc;
}

namespace {

struct AdmissibleDfs {
  u64 h, k;
  std::vector<u64> primes;            // primes <= k
  std::vector<std::vector<u8>> seen;  // residue flags per prime
  std::vector<u32> covered;           // distinct residues per prime
  std::vector<u64> current;
  const std::function<void(const Tuple&)>* emit;
  u64 emitted = 0;

  // Marks v's residues; returns false if some prime becomes fully covered.
  // marked[] records which primes gained a residue so undo is exact.
  bool push(u64 v, std::vector<u32>& marked) {
    bool alive = true;
    for (size_t i = 0; i < primes.size(); ++i) {
      u64 p = primes[i];
      u8& s = seen[i][static_cast<size_t>(v % p)];
      if (!s) {
        s = 1;
        ++covered[i];
        marked.push_back(static_cast<u32>(i));
        if (covered[i] == p) alive = false;
      }
    }
    return alive;
  }

  void pop(u64 v, const std::vector<u32>& marked) {
    for (u32 i : marked) {
      seen[i][static_cast<size_t>(v % primes[i])] = 0;
      --covered[i];
    }
  }

  void rec(u64 start) {
    if (current.size() == k) {
      ++emitted;
      (*emit)(Tuple(current));
      return;
    }
    u64 remaining = k - current.size();
    for (u64 v = start; v + remaining - 1 <= h; ++v) {
      std::vector<u32> marked;
      if (push(v, marked)) {
        current.push_back(v);
        rec(v + 1);
        current.pop_back();
      }
      pop(v, marked);
    }
  }
};

}  // namespace

void for_each_admissible(u64 h, u64 k, const Limits& limits, Counters* counters,
                         const std::function<void(const Tuple&)>& fn) {
  if (k < 1 || k > h) fail_validation("enumeration requires 1 <= k <= h");
  if (binomial_capped(h, k, limits.combinatorial_cap) > limits.combinatorial_cap)
    fail_budget("combinatorial-budget-exceeded: C(" + std::to_string(h) + "," +
                std::to_string(k) + ") > " + std::to_string(limits.combinatorial_cap));
  AdmissibleDfs dfs;
  dfs.h = h;
  dfs.k = k;
  for (u64 p = 2; p <= k; ++p)
    if (is_prime_u64(p)) dfs.primes.push_back(p);
  for (u64 p : dfs.primes) dfs.seen.emplace_back(static_cast<size_t>(p), 0);
  dfs.covered.assign(dfs.primes.size(), 0);
  dfs.emit = &fn;
  dfs.current.reserve(static_cast<size_t>(k));
  dfs.rec(1);
  if (counters) counters->tuples_enumerated.fetch_add(dfs.emitted, std::memory_order_relaxed);
}

std::vector<Tuple> enumerate_admissible(u64 h, u64 k, const Limits& limits, Counters* counters) {
  std::vector<Tuple> out;
  for_each_admissible(h, k, limits, counters, [&](const Tuple& t) { out.push_back(t); });
  return out;
}

namespace {

// Is there an admissible k-subset of {0..d} containing both 0 and d?
bool diameter_feasible(u64 k, u64 d) {
  struct Dfs {
    u64 k, d;
    std::vector<u64> primes;
    std::vector<std::vector<u8>> seen;
    std::vector<u32> covered;
    u64 chosen = 0;

    bool push(u64 v, std::vector<u32>& marked) {
      bool alive = true;
      for (size_t i = 0; i < primes.size(); ++i) {
        u8& s = seen[i][static_cast<size_t>(v % primes[i])];
        if (!s) {
          s = 1;
          ++covered[i];
          marked.push_back(static_cast<u32>(i));
          if (covered[i] == primes[i]) alive = false;
        }
      }
      return alive;
    }
    void pop(u64 v, const std::vector<u32>& marked) {
      for (u32 i : marked) {
        seen[i][static_cast<size_t>(v % primes[i])] = 0;
        --covered[i];
      }
    }
    bool rec(u64 start) {
      if (chosen == k) return true;
      u64 remaining = k - chosen;
      for (u64 v = start; v + remaining - 1 <= d - 1; ++v) {
        std::vector<u32> marked;
        if (push(v, marked)) {
          ++chosen;
          if (rec(v + 1)) return true;
          --chosen;
        }
        pop(v, marked);
      }
      return false;
    }
  } dfs;
  dfs.k = k - 2;  // middle elements; 0 and d are forced
  dfs.d = d;
  for (u64 p = 2; p <= k; ++p)
    if (is_prime_u64(p)) dfs.primes.push_back(p);
  for (u64 p : dfs.primes) dfs.seen.emplace_back(static_cast<size_t>(p), 0);
  dfs.covered.assign(dfs.primes.size(), 0);
  std::vector<u32> m0, m1;
  if (!dfs.push(0, m0)) return false;
  if (!dfs.push(d, m1)) return false;
  if (dfs.k == 0) return true;
  return dfs.rec(1);
}

}  // namespace

u64 min_diameter(u64 k) {
  if (k < 2 || k > 8) fail_validation("min_diameter supports 2 <= k <= 8");
  for (u64 d = k - 1; d <= 1000; ++d) {
    if (diameter_feasible(k, d)) return d;
  }
  fail_validation("min_diameter search exceeded its bound");  // unreachable for k <= 8
}

bool smooth_coprime(const Tuple& H, u64 n, u64 z, const SieveSegment& seg) {
  if (z < 2) fail_validation("smoothness threshold must satisfy z >= 2");
  for (u64 h : H.offsets()) {
    u64 m = n + h;
    if (!seg.covers(m))
      fail_validation("segment-miss: value " + std::to_string(m) +
                      " lies outside the provided segment");
    if (m == 0) return false;  // every prime divides 0
    if (m == 1) continue;
    if (seg.smallest_factor(m) <= z) return false;
  }
  return true;
}

}  // namespace gapslab
