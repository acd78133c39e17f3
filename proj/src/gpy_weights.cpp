#include "gapslab/gpy_weights.hpp"

#include <algorithm>
#include <cmath>

#include "gapslab/errors.hpp"
#include "gapslab/kahan.hpp"
#include "gapslab/parallel.hpp"

namespace gapslab {

namespace {

constexpr int kMaxFactors = 40;

void validate_params(const Tuple& H, const WeightParams& p) {
  if (p.k != H.k()) fail_validation("WeightParams.k must equal the tuple size");
  if (p.k + p.ell < 1) fail_validation("k + ell must be >= 1");
  if (p.R < 2.0) fail_validation("R must be >= 2");
  if (p.delta < 0.0 || p.delta >= 1.0) fail_validation("delta must lie in [0, 1)");
  if (p.epsilon < 0.0) fail_validation("epsilon must be >= 0");
  if (p.vartheta <= 0.0 || p.vartheta >= 1.0) fail_validation("vartheta must lie in (0, 1)");
}

// Truncated divisor sum over the distinct primes in fac[0..nf). Primes are
// ascending, so once d * fac[i] > R no deeper include survives and the only
// completion of the current subset is all-exclude.
double divisor_sum(const u64* fac, const double* logs, int nf, u64 r_floor, double log_r,
                   unsigned a) {
  struct Dfs {
    const u64* fac;
    const double* logs;
    int nf;
    u64 r_floor;
    double log_r;
    unsigned a;
    Kahan acc;

    void rec(int i, u64 d, double logd, int sign) {
      if (i == nf || fac[i] > r_floor / d) {
        acc.add(double(sign) * ipow(log_r - logd, a));
        return;
      }
      rec(i + 1, d, logd, sign);
      rec(i + 1, d * fac[i], logd + logs[i], -sign);
    }
  } dfs{fac, logs, nf, r_floor, log_r, a, {}};
  dfs.rec(0, 1, 0.0, 1);
  return dfs.acc.value();
}

struct EvalContext {
  const SieveSegment* seg;
  const Tuple* H;
  u64 r_floor;
  double log_r;
  unsigned a;

  u64 fac[kMaxFactors];
  double logs[kMaxFactors];
  int nf = 0;

  void factor(u64 n) { nf = collect_prime_factors(n, *H, *seg, fac); }

  bool excluded_by(u64 z) const { return z >= 2 && nf > 0 && fac[0] <= z; }

  double weight() {
    for (int i = 0; i < nf; ++i) logs[i] = std::log(double(fac[i]));
    return divisor_sum(fac, logs, nf, r_floor, log_r, a);
  }
};

u64 smooth_threshold(double R, double delta) {
  if (delta <= 0.0) return 0;
  double z = std::pow(R, delta);
  return z < 2.0 ? 0 : static_cast<u64>(z);
}

void check_window_s0(SumReport& rep, u64 N, const WeightParams& p) {
  if (p.R > std::pow(double(N), 0.5))
    rep.warnings.push_back("R exceeds the N^(1/2) window for the unweighted sum");
}

void check_window_s1(SumReport& rep, u64 N, const WeightParams& p, bool restricted) {
  double expo = restricted ? (p.vartheta - p.epsilon) / (2.0 + p.delta)
                           : (p.vartheta - p.epsilon) / 2.0;
  if (p.R > std::pow(double(N), expo))
    rep.warnings.push_back(restricted
                               ? "R exceeds the N^((vartheta-epsilon)/(2+delta)) window"
                               : "R exceeds the N^((vartheta-epsilon)/2) window");
}

u64 default_p_cut(u64 k, u64 diameter) {
  return std::max<u64>({1000000, 2 * k * k, diameter + 1});
}

double main_term_from_singular(const SingularValue& s, u64 N, double log_r, u64 k, u64 ell,
                               u64 kappa) {
  if (!s.admissible) return 0.0;
  unsigned m = static_cast<unsigned>(k + 2 * ell + kappa);
  unsigned lk = static_cast<unsigned>(ell + kappa);
  return s.value / factorial_d(m) * binom_d(2 * lk, lk) * double(N) * ipow(log_r, m);
}

void fill_ratio(SumReport& rep) {
  if (rep.main_term != 0.0) {
    rep.ratio = rep.value / rep.main_term;
    rep.ratio_defined = true;
  }
}

}  // namespace

int collect_prime_factors(u64 n, const Tuple& H, const SieveSegment& seg, u64* out) {
  int nf = 0;
  for (u64 h : H.offsets()) {
    u64 m = n + h;
    if (m <= 1) continue;
    while (m > 1) {
      if (!seg.covers(m))
        fail_validation("segment-miss: spf chain left the segment at " + std::to_string(m));
      u64 p = seg.smallest_factor(m);
      bool known = false;
      for (int i = 0; i < nf; ++i)
        if (out[i] == p) {
          known = true;
          break;
        }
      if (!known) {
        if (nf >= kMaxFactors)
          fail_budget("factor-limit: more than 40 distinct prime factors in P_H(n)");
        out[nf++] = p;
      }
      do {
        m /= p;
      } while (m % p == 0);
    }
  }
  std::sort(out, out + nf);
  return nf;
}

double lambda_r(u64 n, const Tuple& H, const WeightParams& params, const SieveSegment& seg) {
  validate_params(H, params);
  EvalContext ctx{&seg, &H, static_cast<u64>(params.R), std::log(params.R),
                  static_cast<unsigned>(params.k + params.ell)};
  ctx.factor(n);
  return ctx.weight();
}

SumReport s0(const PrimeEngine& engine, const Tuple& H, u64 N, const WeightParams& params,
             bool restricted, const Exec& exec) {
  validate_params(H, params);
  if (N < 1) fail_validation("N must be >= 1");
  SieveSegment seg = engine.build_segment(0, 2 * N + H.diameter() + 1, exec.counters);

  u64 z = restricted ? smooth_threshold(params.R, params.delta) : 0;
  unsigned a = static_cast<unsigned>(params.k + params.ell);
  u64 r_floor = static_cast<u64>(params.R);
  double log_r = std::log(params.R);

  auto parts = chunked_map<Kahan>(N, 2 * N, exec.chunk, exec.workers, [&](u64, u64 lo, u64 hi) {
    EvalContext ctx{&seg, &H, r_floor, log_r, a};
    Kahan acc;
    for (u64 n = lo; n < hi; ++n) {
      ctx.factor(n);
      if (ctx.excluded_by(z)) continue;
      double v = ctx.weight();
      acc.add(v * v);
    }
    return acc;
  });
  Kahan total;
  for (const auto& part : parts) total.merge(part);

  SumReport rep;
  rep.N = N;
  rep.params = params;
  rep.restricted = restricted;
  rep.value = total.value();
  rep.singular = singular_series(engine, H, default_p_cut(params.k, H.diameter()));
  rep.main_term = main_term_from_singular(rep.singular, N, log_r, params.k, params.ell, 0);
  fill_ratio(rep);
  check_window_s0(rep, N, params);
  if (restricted) check_window_s1(rep, N, params, true);
  return rep;
}

SumReport s1(const PrimeEngine& engine, const Tuple& H, u64 h_star, u64 N,
             const WeightParams& params, bool restricted, const Exec& exec) {
  validate_params(H, params);
  if (N < 1) fail_validation("N must be >= 1");
  SieveSegment seg =
      engine.build_segment(0, 2 * N + std::max(H.diameter(), h_star) + 1, exec.counters);

  u64 z = restricted ? smooth_threshold(params.R, params.delta) : 0;
  unsigned a = static_cast<unsigned>(params.k + params.ell);
  u64 r_floor = static_cast<u64>(params.R);
  double log_r = std::log(params.R);

  auto parts = chunked_map<Kahan>(N, 2 * N, exec.chunk, exec.workers, [&](u64, u64 lo, u64 hi) {
    EvalContext ctx{&seg, &H, r_floor, log_r, a};
    Kahan acc;
    for (u64 n = lo; n < hi; ++n) {
      u64 q = n + h_star;
      if (!seg.is_prime(q)) continue;
      ctx.factor(n);
      if (ctx.excluded_by(z)) continue;
      double v = ctx.weight();
      acc.add(std::log(double(q)) * v * v);
    }
    return acc;
  });
  Kahan total;
  for (const auto& part : parts) total.merge(part);

  Tuple u = H.with(h_star);
  u64 kappa = H.contains(h_star) ? 1 : 0;
  SumReport rep;
  rep.N = N;
  rep.params = params;
  rep.restricted = restricted;
  rep.value = total.value();
  rep.singular = singular_series(engine, u, default_p_cut(u.k(), u.diameter()));
  rep.main_term =
      main_term_from_singular(rep.singular, N, log_r, params.k, params.ell, kappa);
  fill_ratio(rep);
  check_window_s1(rep, N, params, restricted);
  return rep;
}

SumReport s2(const PrimeEngine& engine, double h, u64 N, const WeightParams& params,
             const Limits& limits, const Exec& exec) {
  if (params.k > 4) fail_validation("s2 is a toy-scale sum; k <= 4 required");
  if (params.k < 1 || params.k + params.ell < 1) fail_validation("k + ell must be >= 1");
  if (params.R < 2.0) fail_validation("R must be >= 2");
  if (params.delta < 0.0 || params.delta >= 1.0) fail_validation("delta must lie in [0, 1)");
  if (h < double(params.k)) fail_validation("window h must be at least k");
  if (N < 1) fail_validation("N must be >= 1");
  u64 F = static_cast<u64>(h);

  std::vector<Tuple> tuples = enumerate_admissible(F, params.k, limits, exec.counters);
  SieveSegment seg = engine.build_segment(0, 2 * N + F + 1, exec.counters);

  u64 z = smooth_threshold(params.R, params.delta);
  unsigned a = static_cast<unsigned>(params.k + params.ell);
  u64 r_floor = static_cast<u64>(params.R);
  double log_r = std::log(params.R);
  double log_3n = std::log(3.0 * double(N));

  auto parts = chunked_map<Kahan>(N, 2 * N, exec.chunk, exec.workers, [&](u64, u64 lo, u64 hi) {
    EvalContext ctx{&seg, nullptr, r_floor, log_r, a};
    Kahan acc;
    for (u64 n = lo; n < hi; ++n) {
      Kahan theta_w;
      for (u64 m = n + 1; m <= n + F; ++m)
        if (seg.is_prime(m)) theta_w.add(std::log(double(m)));
      double w = theta_w.value() - log_3n;

      double inner = 0.0;
      for (const Tuple& t : tuples) {
        ctx.H = &t;
        ctx.factor(n);
        if (ctx.excluded_by(z)) continue;
        double v = ctx.weight();
        inner += v * v;
      }
      if (inner != 0.0) acc.add(w * inner);
    }
    return acc;
  });
  Kahan total;
  for (const auto& part : parts) total.merge(part);

  SumReport rep;
  rep.N = N;
  rep.params = params;
  rep.restricted = true;
  double norm = double(N) * ipow(h, static_cast<unsigned>(params.k)) *
                ipow(log_r, static_cast<unsigned>(params.k + 2 * params.ell));
  rep.value = total.value() / norm;

  unsigned k = static_cast<unsigned>(params.k);
  unsigned ell = static_cast<unsigned>(params.ell);
  rep.main_term = 1.0 / factorial_d(k + 2 * ell) * binom_d(2 * ell, ell) *
                  (double(k) / double(k + 2 * ell + 1) * 2.0 * double(2 * ell + 1) /
                       double(ell + 1) * log_r -
                   std::log(double(N)));
  fill_ratio(rep);
  check_window_s1(rep, N, params, true);
  return rep;
}

double main_term_l3(const PrimeEngine& engine, const Tuple& H, u64 N, const WeightParams& params) {
  SingularValue s = singular_series(engine, H, default_p_cut(params.k, H.diameter()));
  return main_term_from_singular(s, N, std::log(params.R), params.k, params.ell, 0);
}

double main_term_l4(const PrimeEngine& engine, const Tuple& H, u64 h_star, u64 N,
                    const WeightParams& params) {
  Tuple u = H.with(h_star);
  SingularValue s = singular_series(engine, u, default_p_cut(u.k(), u.diameter()));
  u64 kappa = H.contains(h_star) ? 1 : 0;
  return main_term_from_singular(s, N, std::log(params.R), params.k, params.ell, kappa);
}

std::vector<double> s0_excluded_profile(const PrimeEngine& engine, const Tuple& H, u64 N,
                                        const WeightParams& params, std::span<const double> deltas,
                                        const Exec& exec) {
  validate_params(H, params);
  for (size_t i = 1; i < deltas.size(); ++i)
    if (deltas[i] < deltas[i - 1]) fail_validation("deltas must be ascending");

  std::vector<u64> zs(deltas.size());
  for (size_t i = 0; i < deltas.size(); ++i) zs[i] = smooth_threshold(params.R, deltas[i]);

  SieveSegment seg = engine.build_segment(0, 2 * N + H.diameter() + 1, exec.counters);
  unsigned a = static_cast<unsigned>(params.k + params.ell);
  u64 r_floor = static_cast<u64>(params.R);
  double log_r = std::log(params.R);
  size_t levels = deltas.size();

  // bucket[j]: squared weight of n first excluded at level j; prefix sums over
  // the buckets give a profile that is non-negative and monotone exactly
  auto parts = chunked_map<std::vector<Kahan>>(
      N, 2 * N, exec.chunk, exec.workers, [&](u64, u64 lo, u64 hi) {
        EvalContext ctx{&seg, &H, r_floor, log_r, a};
        std::vector<Kahan> buckets(levels);
        for (u64 n = lo; n < hi; ++n) {
          ctx.factor(n);
          size_t level = levels;
          for (size_t j = 0; j < levels; ++j) {
            if (ctx.excluded_by(zs[j])) {
              level = j;
              break;
            }
          }
          if (level == levels) continue;
          double v = ctx.weight();
          buckets[level].add(v * v);
        }
        return buckets;
      });

  std::vector<Kahan> buckets(levels);
  for (const auto& part : parts)
    for (size_t j = 0; j < levels; ++j) buckets[j].merge(part[j]);

  std::vector<double> profile(levels);
  Kahan run;
  for (size_t j = 0; j < levels; ++j) {
    run.merge(buckets[j]);
    profile[j] = run.value();
  }
  return profile;
}

}  // namespace gapslab
