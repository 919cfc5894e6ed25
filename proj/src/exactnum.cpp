#include "nodal/exactnum.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace nodal {

GoldenNumber& GoldenNumber::operator*=(const GoldenNumber& o) {
  Rational a = a_ * o.a_ + 5 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

GoldenNumber GoldenNumber::inverse() const {
  // The norm vanishes only at zero because sqrt5 is irrational.
  const Rational n = norm();
  if (sgn(n) == 0) throw ArithmeticError("division by zero in Q(sqrt5)");
  return {a_ / n, -b_ / n};
}

int sign(const GoldenNumber& x) {
  const int sa = sgn(x.rational_part());
  const int sb = sgn(x.sqrt5_part());
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the component with larger square wins.
  const Rational a2 = x.rational_part() * x.rational_part();
  const Rational b2 = 5 * x.sqrt5_part() * x.sqrt5_part();
  return a2 > b2 ? sa : sb;
}

std::strong_ordering operator<=>(const GoldenNumber& l, const GoldenNumber& r) {
  const int s = sign(l - r);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

GoldenNumber abs(const GoldenNumber& x) { return sign(x) < 0 ? -x : x; }

GoldenNumber pow(const GoldenNumber& x, unsigned e) {
  GoldenNumber result(1);
  GoldenNumber base = x;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

GoldenNumber tau() { return {Rational(1, 2), Rational(1, 2)}; }

double GoldenNumber::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(5.0);
}

std::string GoldenNumber::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GoldenNumber& x) {
  const auto& a = x.rational_part();
  const auto& b = x.sqrt5_part();
  if (sgn(b) == 0) return os << a.get_str();
  if (sgn(a) != 0) os << a.get_str() << (sgn(b) > 0 ? "+" : "-");
  else if (sgn(b) < 0) os << "-";
  const Rational ab = sgn(b) < 0 ? Rational(-b) : b;
  if (ab != 1) os << ab.get_str() << "*";
  return os << "sqrt5";
}

bool is_dyadic(const Rational& r) {
  const mpz_class& d = r.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

namespace {

// floor(r * 2^k) / 2^k and the matching ceiling.
Rational floor_to_grid(const Rational& r, unsigned long k) {
  mpz_class scaled_num = r.get_num();
  mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), k);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  Rational out(q, den);
  out.canonicalize();
  return out;
}

Rational ceil_to_grid(const Rational& r, unsigned long k) {
  return -floor_to_grid(-r, k);
}

}  // namespace

DyadicInterval enclose(const GoldenNumber& x, int precision_bits) {
  if (precision_bits < 1) throw std::invalid_argument("enclose: precision_bits must be >= 1");
  const auto p = static_cast<unsigned long>(precision_bits);
  const Rational& a = x.rational_part();
  const Rational& b = x.sqrt5_part();
  if (sgn(b) == 0) {
    return {floor_to_grid(a, p + 2), ceil_to_grid(a, p + 2)};
  }
  // |b| * 2^-k <= 2^-(p+1) once k >= p + 1 + log2|b|; k grows with p so
  // successive enclosures are nested.
  const mpz_class babs_ceil = [&] {
    mpz_class c;
    const Rational babs = abs(b);
    mpz_cdiv_q(c.get_mpz_t(), babs.get_num().get_mpz_t(), babs.get_den().get_mpz_t());
    return c;
  }();
  const unsigned long k = p + 2 + mpz_sizeinbase(babs_ceil.get_mpz_t(), 2);

  mpz_class five_scaled = 5;
  mpz_mul_2exp(five_scaled.get_mpz_t(), five_scaled.get_mpz_t(), 2 * k);
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), five_scaled.get_mpz_t());
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  const Rational sqrt5_lo(s, den);
  const Rational sqrt5_hi(s + 1, den);

  Rational lo = a + b * (sgn(b) > 0 ? sqrt5_lo : sqrt5_hi);
  Rational hi = a + b * (sgn(b) > 0 ? sqrt5_hi : sqrt5_lo);
  lo.canonicalize();
  hi.canonicalize();
  return {floor_to_grid(lo, p + 2), ceil_to_grid(hi, p + 2)};
}

double round_down(const Rational& r) {
  double d = r.get_d();
  if (!std::isfinite(d)) return d;
  if (Rational(d) > r) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double round_up(const Rational& r) {
  double d = r.get_d();
  if (!std::isfinite(d)) return d;
  if (Rational(d) < r) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

}  // namespace nodal
