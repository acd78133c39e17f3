#pragma once
// Exact rational on GMP integers. Deliberately does NOT reduce to lowest terms:
// certificates serialize the fraction exactly as the formula assembled it.
// Denominators are kept positive; comparisons cross-multiply.

#include <gmpxx.h>

#include <string>

#include "gapslab/common.hpp"

namespace gapslab {

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(mpz_class num, mpz_class den);

  // Accepts "num/den" or a plain integer, optional leading '-'.
  static Rational parse(const std::string& s);

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator>(const Rational& o) const { return num_ * o.den_ > o.num_ * den_; }
  bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
  bool same_value(const Rational& o) const { return num_ * o.den_ == o.num_ * den_; }
  bool positive() const { return num_ > 0; }

  Rational reduced() const;
  std::string str() const;  // always "num/den"
  double to_double() const;

 private:
  mpz_class num_;
  mpz_class den_;
};

}  // namespace gapslab
