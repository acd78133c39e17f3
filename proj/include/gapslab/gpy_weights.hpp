#pragma once
// Truncated divisor-sum sieve weights Lambda_R(n; H, k+ell) and the weighted
// sums S_0, S_1, S_2, with the smoothness-restricted variants and their
// first-order reference terms.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gapslab/config.hpp"
#include "gapslab/prime_engine.hpp"
#include "gapslab/singular_series.hpp"
#include "gapslab/tuple_kit.hpp"

namespace gapslab {

struct WeightParams {
  double R = 2.0;
  u64 k = 1;
  u64 ell = 0;
  double delta = 0.0;    // smoothness exponent for restricted sums
  double epsilon = 0.0;  // slack in the distribution-level window checks
  double vartheta = 157.0 / 300.0;
};

struct SumReport {
  double value = 0.0;
  double main_term = 0.0;
  double ratio = 0.0;
  bool ratio_defined = false;
  u64 N = 0;
  bool restricted = false;
  WeightParams params;
  SingularValue singular;  // the S(H) (or S(H u {h*})) behind main_term
  std::vector<std::string> warnings;
};

// Sum over squarefree d | P_H(n), d <= R of mu(d) log^{k+ell}(R/d).
// seg must cover every n+h_i and every quotient in the spf chain (base-0
// segments always do).
double lambda_r(u64 n, const Tuple& H, const WeightParams& params, const SieveSegment& seg);

// Distinct prime factors of P_H(n) in ascending order; returns count.
// Errors with "factor-limit" beyond 40 primes.
int collect_prime_factors(u64 n, const Tuple& H, const SieveSegment& seg, u64* out);

SumReport s0(const PrimeEngine& engine, const Tuple& H, u64 N, const WeightParams& params,
             bool restricted, const Exec& exec = {});

SumReport s1(const PrimeEngine& engine, const Tuple& H, u64 h_star, u64 N,
             const WeightParams& params, bool restricted, const Exec& exec = {});

SumReport s2(const PrimeEngine& engine, double h, u64 N, const WeightParams& params,
             const Limits& limits = {}, const Exec& exec = {});

double main_term_l3(const PrimeEngine& engine, const Tuple& H, u64 N, const WeightParams& params);
double main_term_l4(const PrimeEngine& engine, const Tuple& H, u64 h_star, u64 N,
                    const WeightParams& params);

// Excluded mass s0_unrestricted - s0_restricted for each delta in `deltas`
// (ascending), accumulated so the result is non-negative and non-decreasing
// exactly, by set inclusion.
std::vector<double> s0_excluded_profile(const PrimeEngine& engine, const Tuple& H, u64 N,
                                        const WeightParams& params, std::span<const double> deltas,
                                        const Exec& exec = {});

}  // namespace gapslab
