#include "gapslab/singular_series.hpp"

#include <algorithm>
#include <cmath>

#include "gapslab/errors.hpp"
#include "gapslab/kahan.hpp"

namespace gapslab {

SingularSeriesEvaluator::SingularSeriesEvaluator(const PrimeEngine& engine, u64 k, u64 p_cut)
    : k_(k), p_cut_(p_cut) {
  if (k_ < 1) fail_validation("singular series requires k >= 1");
  if (p_cut_ < 2) fail_validation("p_cut must be >= 2");
  if (p_cut_ >= (u64(1) << 32)) fail_budget("p_cut above 2^32 is not supported");
  primes_.reserve(static_cast<size_t>(
      p_cut_ < 17 ? 8 : 1.2 * double(p_cut_) / std::log(double(p_cut_))));
  engine.for_primes(2, p_cut_ + 1, [&](u64 p) { primes_.push_back(static_cast<u32>(p)); });
  gen_prefix_.resize(primes_.size());
  Kahan acc;
  double kd = double(k_);
  for (size_t i = 0; i < primes_.size(); ++i) {
    u64 p = primes_[i];
    if (p > k_) {
      double pd = double(p);
      acc.add(std::log1p(-kd / pd) - kd * std::log1p(-1.0 / pd));
    }
    gen_prefix_[i] = acc.value();
  }
}

SingularValue SingularSeriesEvaluator::evaluate(const Tuple& H) const {
  if (H.k() != k_) fail_validation("tuple size does not match evaluator k");
  u64 diam = H.diameter();
  u64 min_cut = std::max<u64>(2 * k_ * k_, diam + 1);
  if (p_cut_ < min_cut)
    fail_validation("p_cut too small: need at least max(2k^2, diameter+1) = " +
                    std::to_string(min_cut));

  SingularValue out;
  out.p_cut = p_cut_;
  if (!is_admissible(H)) return out;  // exact zero, zero radius
  out.admissible = true;

  // exact nu for p <= max(diameter, k); the generic nu = k factor beyond
  u64 head_bound = std::max(diam, k_);
  Kahan head;
  size_t idx = 0;
  double kd = double(k_);
  while (idx < primes_.size() && primes_[idx] <= head_bound) {
    u64 p = primes_[idx];
    double nu = double(nu_mod_p_unchecked(H, p));
    double pd = double(p);
    head.add(std::log1p(-nu / pd) - kd * std::log1p(-1.0 / pd));
    ++idx;
  }
  double generic = gen_prefix_.back() - (idx > 0 ? gen_prefix_[idx - 1] : 0.0);
  double log_total = head.value() + generic;
  out.value = std::exp(log_total);

  // Tail: for p > p_cut >= 2k^2 each |log factor| <= 2 k^2 / p^2, and the prime
  // sum of 1/p^2 past p_cut is below 2/(p_cut log p_cut). A small slop covers
  // the compensated accumulation and the prefix difference.
  double tail = 4.0 * kd * kd / (double(p_cut_) * std::log(double(p_cut_)));
  double slop = 1e-13 * (1.0 + std::abs(log_total));
  out.error_radius = out.value * std::expm1(tail + slop);
  return out;
}

SingularValue singular_series(const PrimeEngine& engine, const Tuple& H, u64 p_cut) {
  return SingularSeriesEvaluator(engine, H.k(), p_cut).evaluate(H);
}

double gallagher_average(const PrimeEngine& engine, u64 h, u64 k, bool ordered,
                         const Limits& limits, const Exec& exec) {
  if (k < 1 || k > 3) fail_validation("gallagher_average supports 1 <= k <= 3");
  if (h < k) fail_validation("window must satisfy h >= k");
  // reuse the enumeration budget for the shape count C(h-1, k-1) <= C(h, k)
  {
    u128 c = 1;
    u64 kk = std::min(k, h - k);
    for (u64 i = 1; i <= kk; ++i) {
      c = c * (h - kk + i) / i;
      if (c > limits.combinatorial_cap)
        fail_budget("combinatorial-budget-exceeded in gallagher_average");
    }
  }

  u64 p_cut = std::max<u64>({1000000, 2 * k * k, h});
  SingularSeriesEvaluator eval(engine, k, p_cut);

  // Translation invariance: group windows by their shape (leading offset 0).
  // A shape of diameter d fits h - d times inside [1, h].
  Kahan set_sum;
  u64 shapes = 0;
  if (k == 1) {
    set_sum.add(double(h) * eval.evaluate(Tuple({0})).value);
    shapes = 1;
  } else if (k == 2) {
    for (u64 d = 1; d + 1 <= h; ++d) {
      set_sum.add(double(h - d) * eval.evaluate(Tuple({0, d})).value);
      ++shapes;
    }
  } else {
    for (u64 a = 1; a + 2 <= h; ++a) {
      for (u64 b = a + 1; b + 1 <= h; ++b) {
        set_sum.add(double(h - b) * eval.evaluate(Tuple({0, a, b})).value);
        ++shapes;
      }
    }
  }
  exec.add_tuples(shapes);

  double unordered = set_sum.value() / ipow(double(h), static_cast<unsigned>(k));
  return ordered ? factorial_d(static_cast<unsigned>(k)) * unordered : unordered;
}

}  // namespace gapslab
