#pragma once
// Certified evaluation of the singular series S(H) = prod_p (1 - nu_H(p)/p)(1 - 1/p)^{-k}
// and its window average over k-subsets of [1, h].

#include "gapslab/config.hpp"
#include "gapslab/prime_engine.hpp"
#include "gapslab/tuple_kit.hpp"

namespace gapslab {

struct SingularValue {
  double value = 0.0;
  double error_radius = 0.0;  // |true S(H) - value| <= error_radius
  u64 p_cut = 0;
  bool admissible = false;
};

// Precomputes the prime list up to p_cut and prefix sums of the generic
// log-factor (the nu = k regime), so one tuple evaluation costs O(pi(diameter)).
class SingularSeriesEvaluator {
 public:
  SingularSeriesEvaluator(const PrimeEngine& engine, u64 k, u64 p_cut);

  SingularValue evaluate(const Tuple& H) const;
  u64 k() const { return k_; }
  u64 p_cut() const { return p_cut_; }

 private:
  u64 k_;
  u64 p_cut_;
  std::vector<u32> primes_;
  std::vector<double> gen_prefix_;  // compensated prefix over primes > k
};

SingularValue singular_series(const PrimeEngine& engine, const Tuple& H, u64 p_cut);

// Average of S(H) over k-element windows of [1, h], normalized by h^k.
// ordered=true sums over ordered distinct k-tuples (k! times the set sum).
double gallagher_average(const PrimeEngine& engine, u64 h, u64 k, bool ordered,
                         const Limits& limits = {}, const Exec& exec = {});

}  // namespace gapslab
