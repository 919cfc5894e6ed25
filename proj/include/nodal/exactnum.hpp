#pragma once

// Exact arithmetic in Q(sqrt5) and outward-rounded dyadic enclosures.

#include <gmpxx.h>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace nodal {

using Integer = mpz_class;
using Rational = mpq_class;

struct ArithmeticError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Element a + b*sqrt(5) of the real quadratic field Q(sqrt5).
///
/// Both components are kept canonical (lowest terms, positive denominator),
/// so structural equality is value equality.
class GoldenNumber {
 public:
  GoldenNumber() = default;
  GoldenNumber(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  GoldenNumber(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  GoldenNumber(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static GoldenNumber sqrt5() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  GoldenNumber conjugate() const { return {a_, -b_}; }
  /// Field norm a^2 - 5 b^2 (rational).
  Rational norm() const { return a_ * a_ - 5 * b_ * b_; }
  GoldenNumber inverse() const;

  GoldenNumber operator-() const { return {-a_, -b_}; }
  GoldenNumber& operator+=(const GoldenNumber& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  GoldenNumber& operator-=(const GoldenNumber& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  GoldenNumber& operator*=(const GoldenNumber& o);
  GoldenNumber& operator/=(const GoldenNumber& o) { return *this *= o.inverse(); }

  friend GoldenNumber operator+(GoldenNumber l, const GoldenNumber& r) { return l += r; }
  friend GoldenNumber operator-(GoldenNumber l, const GoldenNumber& r) { return l -= r; }
  friend GoldenNumber operator*(GoldenNumber l, const GoldenNumber& r) { return l *= r; }
  friend GoldenNumber operator/(GoldenNumber l, const GoldenNumber& r) { return l /= r; }

  friend bool operator==(const GoldenNumber& l, const GoldenNumber& r) {
    return l.a_ == r.a_ && l.b_ == r.b_;
  }
  /// Total order of the real embedding (sqrt5 > 0).
  friend std::strong_ordering operator<=>(const GoldenNumber& l, const GoldenNumber& r);

  /// Nearest-ish double; not used for any decision.
  double to_double() const;
  std::string to_string() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

std::ostream& operator<<(std::ostream& os, const GoldenNumber& x);

/// Exact sign of a + b sqrt5 in {-1, 0, +1}.
int sign(const GoldenNumber& x);
GoldenNumber abs(const GoldenNumber& x);
GoldenNumber pow(const GoldenNumber& x, unsigned e);

/// The golden ratio (1 + sqrt5) / 2.
GoldenNumber tau();

/// Closed interval with dyadic rational endpoints.
struct DyadicInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  bool subset_of(const DyadicInterval& o) const { return o.lo <= lo && hi <= o.hi; }
};

/// True when r = m / 2^k for integers m, k >= 0.
bool is_dyadic(const Rational& r);

/// Interval containing x with width <= 2^-precision_bits * max(1, |x|).
/// Enclosures are nested: enclose(x, p) is inside enclose(x, q) for p > q.
DyadicInterval enclose(const GoldenNumber& x, int precision_bits);

/// Sign of x as decided by its exact rational comparison; convenient when
/// only a Rational is at hand.
inline int sign(const Rational& r) { return sgn(r); }

/// Rational -> double rounded toward -inf / +inf.
double round_down(const Rational& r);
double round_up(const Rational& r);

}  // namespace nodal

namespace Eigen {

template <>
struct NumTraits<nodal::GoldenNumber> : GenericNumTraits<nodal::GoldenNumber> {
  using Real = nodal::GoldenNumber;
  using NonInteger = nodal::GoldenNumber;
  using Nested = nodal::GoldenNumber;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 32
  };
};

}  // namespace Eigen
