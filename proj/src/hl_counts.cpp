#include "gapslab/hl_counts.hpp"

#include <algorithm>
#include <cmath>

#include "gapslab/errors.hpp"
#include "gapslab/kahan.hpp"
#include "gapslab/parallel.hpp"
#include "gapslab/prime_scan.hpp"

namespace gapslab {

double IntervalHistogram::lambda() const { return h / std::log(double(x)); }

double IntervalHistogram::poisson_ref(u64 j) const {
  double lam = lambda();
  return double(x) * std::exp(-lam) * ipow(lam, static_cast<unsigned>(j)) /
         factorial_d(static_cast<unsigned>(j));
}

u64 count_tuple(const PrimeEngine& engine, const Tuple& H, u64 x, const Exec& exec) {
  if (x < 1) fail_validation("count_tuple requires x >= 1");
  u64 diam = H.max_offset();
  auto parts = chunked_map<u64>(1, x + 1, exec.chunk, exec.workers, [&](u64, u64 lo, u64 hi) {
    std::vector<u64> bits;
    engine.sieve_bits(lo, hi - lo + diam + 1, bits);
    exec.add_segments(1);
    u64 count = 0;
    for (u64 n = lo; n < hi; ++n) {
      bool all = true;
      for (u64 off : H.offsets()) {
        u64 i = n + off - lo;
        if (!((bits[i >> 6] >> (i & 63)) & 1u)) {
          all = false;
          break;
        }
      }
      if (all) ++count;
    }
    return count;
  });
  u64 total = 0;
  for (u64 c : parts) total += c;
  return total;
}

IntervalHistogram interval_histogram(const PrimeEngine& engine, u64 x, double h,
                                     const Exec& exec) {
  if (x < 2) fail_validation("interval_histogram requires x >= 2");
  if (h < 1.0) fail_validation("interval_histogram requires h >= 1");
  u64 F = static_cast<u64>(h);  // for integer n, primes in (n, n+h] are those in (n, n+floor(h)]

  auto parts = chunked_map<std::vector<u64>>(
      1, x + 1, exec.chunk, exec.workers, [&](u64, u64 lo, u64 hi) {
        std::vector<u64> bits;
        engine.sieve_bits(lo + 1, hi - lo + F, bits);
        exec.add_segments(1);
        auto bit = [&](u64 m) {  // m in [lo+1, hi+F)
          u64 i = m - lo - 1;
          return static_cast<u64>((bits[i >> 6] >> (i & 63)) & 1u);
        };
        std::vector<u64> counts;
        auto bump = [&](u64 j) {
          if (j >= counts.size()) counts.resize(j + 1, 0);
          ++counts[j];
        };
        u64 window = 0;  // integer sliding count of primes in (n, n+F], exact
        for (u64 m = lo + 1; m <= lo + F; ++m) window += bit(m);
        bump(window);
        for (u64 n = lo + 1; n < hi; ++n) {
          window -= bit(n);
          window += bit(n + F);
          bump(window);
        }
        return counts;
      });

  IntervalHistogram out;
  out.x = x;
  out.h = h;
  for (const auto& part : parts) {
    if (part.size() > out.counts.size()) out.counts.resize(part.size(), 0);
    for (size_t j = 0; j < part.size(); ++j) out.counts[j] += part[j];
  }
  return out;
}

namespace {

// Per-lambda qualifying-gap counter for the CDF scan.
struct CdfAcc {
  const std::vector<double>* lambdas = nullptr;
  bool log_x = false;
  double log_x_value = 0.0;
  std::vector<u64> counts;
  u64 primes = 0;

  void init(const std::vector<double>* ls, bool lx, double lxv) {
    lambdas = ls;
    log_x = lx;
    log_x_value = lxv;
    counts.assign(ls->size(), 0);
  }

  void visit(u64 p, u64 p_next) {
    double gap = double(p_next - p);
    double ref = log_x ? log_x_value : std::log(double(p));
    const auto& ls = *lambdas;
    for (size_t j = 0; j < ls.size(); ++j)
      if (gap <= ls[j] * ref) ++counts[j];
    ++primes;
  }

  void merge(const CdfAcc& o) {
    for (size_t j = 0; j < o.counts.size(); ++j) counts[j] += o.counts[j];
    primes += o.primes;
  }
};

}  // namespace

GapCdf gap_cdf(const PrimeEngine& engine, u64 x, std::vector<double> lambdas,
               bool reference_log_x, const Exec& exec) {
  if (x < 3) fail_validation("gap_cdf requires x >= 3");
  for (double l : lambdas)
    if (!(l > 0.0)) fail_validation("gap_cdf lambdas must be positive");
  std::sort(lambdas.begin(), lambdas.end());

  double lxv = std::log(double(x));
  CdfAcc total;
  total.init(&lambdas, reference_log_x, lxv);

  struct Chunk {
    CdfAcc acc;
    u64 first = 0, last = 0;
  };
  auto outs = chunked_map<Chunk>(2, x + 1, exec.chunk, exec.workers, [&](u64, u64 a, u64 b) {
    Chunk out;
    out.acc.init(&lambdas, reference_log_x, lxv);
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

  GapCdf cdf;
  cdf.x = x;
  cdf.reference_log_x = reference_log_x;
  cdf.prime_count = total.primes;
  for (size_t j = 0; j < lambdas.size(); ++j)
    cdf.points.emplace_back(
        lambdas[j], total.primes ? double(total.counts[j]) / double(total.primes) : 0.0);
  return cdf;
}

BvProbe bv_discrepancy(const PrimeEngine& engine, u64 x, double theta_exp, double smooth_delta,
                       const Tuple& H, const Limits& limits, const Exec& exec) {
  if (x < 3) fail_validation("bv_discrepancy requires x >= 3");
  if (x > limits.bv_x_cap)
    fail_budget("cost guard exceeded: x > " + std::to_string(limits.bv_x_cap));
  if (!(theta_exp > 0.0 && theta_exp < 0.6)) fail_validation("theta_exp must lie in (0, 0.6)");
  if (!(smooth_delta > 0.0 && smooth_delta <= 0.2))
    fail_validation("smooth_delta must lie in (0, 0.2]");

  u64 q_max = static_cast<u64>(std::pow(double(x), theta_exp));
  u64 smooth_bound = static_cast<u64>(std::pow(double(x), smooth_delta));

  std::vector<u64> small_primes;
  engine.for_primes(2, smooth_bound + 1, [&](u64 p) { small_primes.push_back(p); });

  struct Modulus {
    u64 q;
    std::vector<u64> primes;
  };
  std::vector<Modulus> moduli;
  std::vector<u64> stack;
  auto dfs = [&](auto&& self, size_t i, u64 q) -> void {
    moduli.push_back({q, stack});
    for (size_t j = i; j < small_primes.size(); ++j) {
      u64 p = small_primes[j];
      if (p > q_max / q) break;
      stack.push_back(p);
      self(self, j + 1, q * p);
      stack.pop_back();
    }
  };
  dfs(dfs, 0, 1);
  std::sort(moduli.begin(), moduli.end(),
            [](const Modulus& a, const Modulus& b) { return a.q < b.q; });

  // von Mangoldt support, ascending by n
  std::vector<std::pair<u64, double>> events;
  engine.for_primes(2, x + 1, [&](u64 p) { events.emplace_back(p, std::log(double(p))); });
  u64 root = isqrt_u64(x);
  size_t prime_only = events.size();
  for (size_t i = 0; i < prime_only; ++i) {
    u64 p = events[i].first;
    if (p > root) break;
    double lp = events[i].second;
    for (u128 m = u128(p) * p; m <= x; m *= p) events.emplace_back(static_cast<u64>(m), lp);
  }
  std::sort(events.begin(), events.end());

  BvProbe probe;
  Kahan total;
  std::vector<Kahan> buckets;
  for (const Modulus& mod : moduli) {
    u64 q = mod.q;
    // invertible residues a (mod q) with P_H(a) = 0 (mod q), built by CRT
    std::vector<u64> residues{0};
    u64 built = 1;
    bool empty = false;
    for (u64 p : mod.primes) {
      std::vector<u64> roots;
      for (u64 off : H.offsets()) {
        u64 r = (p - off % p) % p;
        if (r == 0) continue;  // root not invertible mod p
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
      if (roots.empty()) {
        empty = true;
        break;
      }
      std::sort(roots.begin(), roots.end());
      u64 inv = 1;  // built^{-1} mod p, p is tiny
      for (u64 t = 1; t < p; ++t)
        if ((built % p) * t % p == 1) {
          inv = t;
          break;
        }
      std::vector<u64> next;
      next.reserve(residues.size() * roots.size());
      for (u64 a : residues) {
        for (u64 r : roots) {
          u64 diff = (r + p - a % p) % p;
          next.push_back(a + built * ((diff * inv) % p));
        }
      }
      built *= p;
      residues = std::move(next);
    }
    if (empty) continue;

    buckets.assign(static_cast<size_t>(q), Kahan{});
    for (const auto& [n, lp] : events) buckets[static_cast<size_t>(n % q)].add(lp);

    u64 phi = 1;
    for (u64 p : mod.primes) phi *= p - 1;
    double expected = double(x) / double(phi);

    std::sort(residues.begin(), residues.end());
    double worst = 0.0;
    for (u64 a : residues) {
      double d = std::abs(buckets[static_cast<size_t>(a)].value() - expected);
      if (d > worst) worst = d;
    }
    total.add(worst);
    probe.moduli += 1;
    probe.residues += residues.size();
    exec.add_moduli(1);
  }

  probe.normalized = total.value() / double(x);
  return probe;
}

}  // namespace gapslab
