#pragma once
// Empirical tuple counts, prime counts in sliding windows with their Poisson
// references, the normalized-gap CDF, and the smooth-moduli progression
// discrepancy probe.

#include <vector>

#include "gapslab/config.hpp"
#include "gapslab/prime_engine.hpp"
#include "gapslab/tuple_kit.hpp"

namespace gapslab {

struct IntervalHistogram {
  u64 x = 0;
  double h = 0.0;
  std::vector<u64> counts;  // counts[j] = #{1 <= n <= x : exactly j primes in (n, n+h]}
  double lambda() const;
  double poisson_ref(u64 j) const;  // x e^-lambda lambda^j / j!
};

struct GapCdf {
  u64 x = 0;
  bool reference_log_x = false;  // gap compared against lambda*log(x) instead of lambda*log(p)
  std::vector<std::pair<double, double>> points;  // (lambda, fraction), ascending in lambda
  u64 prime_count = 0;
};

// #{n <= x : n + h_i prime for all i}
u64 count_tuple(const PrimeEngine& engine, const Tuple& H, u64 x, const Exec& exec = {});

IntervalHistogram interval_histogram(const PrimeEngine& engine, u64 x, double h,
                                     const Exec& exec = {});

GapCdf gap_cdf(const PrimeEngine& engine, u64 x, std::vector<double> lambdas,
               bool reference_log_x = false, const Exec& exec = {});

struct BvProbe {
  double normalized = 0.0;  // sum of max-residue discrepancies, divided by x
  u64 moduli = 0;           // smooth squarefree moduli that contributed
  u64 residues = 0;         // residue classes examined
};

// Sum over squarefree x^smooth_delta-smooth q <= x^theta_exp of the largest
// |psi(x;q,a) - x/phi(q)| over invertible residues a with P_H(a) = 0 (mod q),
// normalized by x.
BvProbe bv_discrepancy(const PrimeEngine& engine, u64 x, double theta_exp, double smooth_delta,
                       const Tuple& H, const Limits& limits = {}, const Exec& exec = {});

}  // namespace gapslab
