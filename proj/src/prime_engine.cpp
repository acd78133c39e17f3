#include "gapslab/prime_engine.hpp"

#include <cmath>
#include <numeric>

#include "gapslab/kahan.hpp"

namespace gapslab {

namespace {

constexpr u64 kEvenPatternBaseEven = 0xAAAAAAAAAAAAAAAAull;  // odd indices set
constexpr u64 kEvenPatternBaseOdd = 0x5555555555555555ull;   // even indices set

inline void clear_bit(u64* bits, u64 i) { bits[i >> 6] &= ~(u64(1) << (i & 63)); }
inline void set_bit(u64* bits, u64 i) { bits[i >> 6] |= u64(1) << (i & 63); }

}  // namespace

PrimeEngine::PrimeEngine(const Limits& limits) : limits_(limits) {
  if (limits_.sieve_limit < 4) fail_validation("sieve limit must be at least 4");
  if (limits_.segment_len < 64 || (limits_.segment_len & 63) != 0)
    fail_validation("segment length must be a positive multiple of 64");
  u64 root = isqrt_u64(limits_.sieve_limit);
  // simple full sieve for the base primes <= sqrt(limit)
  std::vector<u8> comp(static_cast<size_t>(root) + 1, 0);
  for (u64 p = 2; p * p <= root; ++p) {
    if (comp[p]) continue;
    for (u64 m = p * p; m <= root; m += p) comp[m] = 1;
  }
  for (u64 p = 2; p <= root; ++p)
    if (!comp[p]) base_primes_.push_back(static_cast<u32>(p));
}

void PrimeEngine::check_range(u64 base, u64 len) const {
  if (len == 0) return;
  if (base > limits_.sieve_limit || len - 1 > limits_.sieve_limit - base)
    fail_budget("limit-exceeded: range [" + std::to_string(base) + ", " +
                std::to_string(base + len) + ") passes the configured sieve limit " +
                std::to_string(limits_.sieve_limit));
}

// One block, both outputs optional. spf crossing order: evens first (factor 2),
// then odd primes ascending with first-write-wins, which yields the smallest factor.
void PrimeEngine::sieve_block(u64 base, u64 len, u64* bits, u32* spf) const {
  u64 end = base + len;
  u64 words = (len + 63) >> 6;
  u64 pattern = (base & 1) ? kEvenPatternBaseOdd : kEvenPatternBaseEven;
  for (u64 w = 0; w < words; ++w) bits[w] = pattern;
  // mask tail bits beyond len
  if (len & 63) bits[words - 1] &= (u64(1) << (len & 63)) - 1;
  if (base <= 2 && 2 < end) set_bit(bits, 2 - base);
  if (base <= 1 && 1 < end) clear_bit(bits, 1 - base);
  // (0 is even, so the pattern already leaves it unset)

  if (spf) {
    for (u64 i = 0; i < len; ++i) spf[i] = 0;
    if (base == 0 && len > 0) spf[0] = 1;
    if (base <= 1 && 1 < end) spf[1 - base] = 1;
    u64 first_even = base + ((base & 1) ? 1 : 0);
    if (first_even < 4) first_even = 4;
    for (u64 m = first_even; m < end; m += 2) spf[m - base] = 2;
  }

  for (size_t idx = 1; idx < base_primes_.size(); ++idx) {  // skip p = 2
    u64 p = base_primes_[idx];
    u64 pp = p * p;
    if (pp >= end) break;
    u64 start = ((base + p - 1) / p) * p;
    if (start < pp) start = pp;
    if ((start & 1) == 0) start += p;  // even multiples are handled by the pattern
    for (u64 m = start; m < end; m += 2 * p) {
      clear_bit(bits, m - base);
      if (spf) {
        u32& slot = spf[m - base];
        if (slot == 0) slot = static_cast<u32>(p);
      }
    }
  }
}

SieveSegment PrimeEngine::build_segment(u64 base, u64 len, Counters* counters) const {
  if (len < 1) fail_validation("segment length must be >= 1");
  if (len > limits_.max_segment_len)
    fail_budget("segment length " + std::to_string(len) + " exceeds the memory budget cap " +
                std::to_string(limits_.max_segment_len));
  check_range(base, len);

  SieveSegment seg;
  seg.base = base;
  seg.len = len;
  seg.bits.assign(static_cast<size_t>((len + 63) >> 6), 0);
  seg.spf.assign(static_cast<size_t>(len), 0);

  // block-wise so big base-0 tables reuse the same inner loop; block starts are
  // 64-aligned relative to base, keeping word slices disjoint
  u64 block = limits_.segment_len;
  for (u64 off = 0; off < len; off += block) {
    u64 blen = off + block < len ? block : len - off;
    sieve_block(base + off, blen, seg.bits.data() + (off >> 6), seg.spf.data() + off);
    if (counters) counters->segments_built.fetch_add(1, std::memory_order_relaxed);
  }
  return seg;
}

void PrimeEngine::sieve_bits(u64 base, u64 len, std::vector<u64>& bits) const {
  check_range(base, len);
  bits.assign(static_cast<size_t>((len + 63) >> 6), 0);
  if (len == 0) return;
  u64 block = limits_.segment_len;
  for (u64 off = 0; off < len; off += block) {
    u64 blen = off + block < len ? block : len - off;
    sieve_block(base + off, blen, bits.data() + (off >> 6), nullptr);
  }
}

bool PrimeEngine::is_prime(u64 n) const {
  if (n < 2) return false;
  check_range(n, 1);
  for (u64 p : base_primes_) {
    if (p * p > n) break;
    if (n % p == 0) return n == p;
  }
  return true;
}

double PrimeEngine::theta(u64 m) const {
  return is_prime(m) ? std::log(static_cast<double>(m)) : 0.0;
}

u64 PrimeEngine::next_prime(u64 m) const {
  u64 window = 4096;
  u64 start = m + 1;
  if (start < 2) start = 2;
  std::vector<u64> buf;
  while (start <= limits_.sieve_limit) {
    u64 len = window;
    if (len - 1 > limits_.sieve_limit - start) len = limits_.sieve_limit - start + 1;
    sieve_bits(start, len, buf);
    for (size_t w = 0; w < buf.size(); ++w) {
      u64 word = buf[w];
      if (word) return start + (u64(w) << 6) + u64(__builtin_ctzll(word));
    }
    start += len;
  }
  fail_budget("limit-exceeded: no prime above " + std::to_string(m) +
              " within the configured sieve limit");
}

double PrimeEngine::psi_progression(u64 x, u64 q, u64 a) const {
  if (q < 1) fail_validation("modulus must be >= 1");
  if (a >= q) fail_validation("residue must satisfy 0 <= a < q");
  if (q > 1 && std::gcd(a, q) != 1)
    fail_validation("invalid-residue: gcd(a, q) > 1 for a = " + std::to_string(a) +
                    ", q = " + std::to_string(q));
  check_range(0, x + 1);
  Kahan acc;
  for_primes(2, x + 1, [&](u64 p) {
    if (p % q == a) acc.add(std::log(static_cast<double>(p)));
  });
  u64 root = isqrt_u64(x);
  for (u64 p : base_primes_) {
    if (p > root) break;
    double lp = std::log(static_cast<double>(p));
    for (u128 m = u128(p) * p; m <= x; m *= p) {
      if (static_cast<u64>(m % q) == a) acc.add(lp);
    }
  }
  return acc.value();
}

ChebyshevTable PrimeEngine::chebyshev(u64 x) const {
  check_range(0, x + 1);
  ChebyshevTable t;
  t.x = x;
  Kahan theta_acc;
  Kahan psi_acc;
  for_primes(2, x + 1, [&](u64 p) {
    double lp = std::log(static_cast<double>(p));
    theta_acc.add(lp);
    psi_acc.add(lp);
    ++t.pi;
  });
  u64 root = isqrt_u64(x);
  for (u64 p : base_primes_) {
    if (p > root) break;
    double lp = std::log(static_cast<double>(p));
    for (u128 m = u128(p) * p; m <= x; m *= p) psi_acc.add(lp);
  }
  t.theta_sum = theta_acc.value();
  t.psi = psi_acc.value();
  return t;
}

}  // namespace gapslab
