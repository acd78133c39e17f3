#pragma once
// Neumaier compensated accumulator. Merging two accumulators folds the partial
// sum and its compensation in a fixed order, so segment-ordered reductions are
// bit-identical regardless of how many workers produced the partials.

#include <cmath>

namespace gapslab {

struct Kahan {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  void merge(const Kahan& o) {
    add(o.sum);
    add(o.comp);
  }

  double value() const { return sum + comp; }
};

}  // namespace gapslab
