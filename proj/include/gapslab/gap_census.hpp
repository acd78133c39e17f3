#pragma once
// Gap counting over dyadic ranges, window counts Q(N,h), reciprocal sums with
// iterated-log thresholds, and exact-rational certification of the parameter
// inequality behind the gap-frequency exponent.

#include <map>
#include <vector>

#include "gapslab/config.hpp"
#include "gapslab/prime_engine.hpp"
#include "gapslab/rational.hpp"

namespace gapslab {

struct GapHistogram {
  u64 N = 0;
  std::map<u64, u64> counts;  // gap g -> #{p in (N, 2N] with next_prime(p) - p = g}
  u64 prime_count = 0;        // pi(2N) - pi(N)
  std::vector<std::pair<u64, double>> normalized;  // (p, gap / log p) when requested
};

GapHistogram gap_histogram(const PrimeEngine& engine, u64 N, const Exec& exec = {},
                           bool keep_normalized = false);

// #{n in [N, 2N) : more than one prime in (n, n+h]}
u64 q_count(const PrimeEngine& engine, u64 N, double h, const Exec& exec = {});

// Sum of log(n + j) over 1 <= j <= h with n + j prime.
double theta_window(const PrimeEngine& engine, u64 n, u64 h);

// #{p in [N, 2N) : next_prime(p) - p <= eta * log N}
u64 gap_count_threshold(const PrimeEngine& engine, u64 N, double eta, const Exec& exec = {});

// Q(N,h) <= floor(h) * #{gap pairs (p, p') with p in (N-h, 2N], p'-p <= h},
// checked exactly (the widened prime range replaces the analytic error term).
bool inequality_42_check(const PrimeEngine& engine, u64 N, double h, const Exec& exec = {});

// Product of iterated logs log_2(x) ... log_k(x); empty product 1 for k = 1.
// Errors when any iterated log down to level k is <= 0.
double logorial(double x, int k);

struct RecipRule {
  enum class Kind { FixedGap, LambdaConst, Logorial };
  Kind kind = Kind::FixedGap;
  double fixed_gap = 2.0;   // FixedGap: p' - p <= K
  double lambda = 1.0;      // LambdaConst: p' - p <= lambda * log p
  int log_depth = 2;        // Logorial: lambda(p) = coeff / (Log_k p)^exponent / (log_k p)^epsilon
  double epsilon = 0.0;
  double exponent = 1.0;
  double coeff = 1.0;
};

struct RecipResult {
  double sum = 0.0;       // sum of 1/p over qualifying primes p <= x
  u64 contributing = 0;   // primes that met the threshold
  u64 skipped_domain = 0; // primes where the iterated log was undefined
  u64 primes_seen = 0;
};

RecipResult reciprocal_sum(const PrimeEngine& engine, u64 x, const RecipRule& rule,
                           const Exec& exec = {});

struct RationalCert {
  u64 k = 0;
  u64 ell = 0;
  Rational vartheta;
  Rational delta;
  Rational epsilon;
  Rational lhs;  // as assembled, unreduced
  bool passes = false;
};

// lhs = 4 * (k/(k+2l+1)) * ((2l+1)/(2l+2)) * (vartheta - epsilon)/(2 + delta),
// exact; passes iff lhs > 1.
RationalCert verify_params(u64 k, u64 ell, const Rational& vartheta, const Rational& delta,
                           const Rational& epsilon);

struct OptimizeResult {
  u64 k = 0;
  u64 ell = 0;
  RationalCert cert;
};

// Smallest k admitting a passing certificate at delta = epsilon = 0 with some
// ell <= ell_max; ties broken by the smallest ell. Errors when infeasible.
OptimizeResult optimize_k(const Rational& vartheta, u64 ell_max);

}  // namespace gapslab
