#include "gapslab/rational.hpp"

#include "gapslab/errors.hpp"

namespace gapslab {

Rational::Rational(mpz_class num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) fail_validation("rational denominator must be nonzero");
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
}

Rational Rational::parse(const std::string& s) {
  auto parse_int = [](const std::string& t) -> mpz_class {
    if (t.empty()) fail_validation("empty integer in rational string");
    size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) fail_validation("malformed integer in rational string");
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9')
        fail_validation("malformed rational \"" + t + "\": expected digits");
    return mpz_class(t, 10);
  };
  size_t slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s), 1);
  mpz_class n = parse_int(s.substr(0, slash));
  mpz_class d = parse_int(s.substr(slash + 1));
  if (d == 0) fail_validation("rational denominator must be nonzero: \"" + s + "\"");
  return Rational(std::move(n), std::move(d));
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) fail_validation("rational division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}

Rational Rational::reduced() const {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g == 0) return Rational(0, 1);
  return Rational(num_ / g, den_ / g);
}

std::string Rational::str() const { return num_.get_str() + "/" + den_.get_str(); }

double Rational::to_double() const {
  mpq_class q(num_, den_);
  q.canonicalize();
  return q.get_d();
}

}  // namespace gapslab
