#pragma once

// Outward-rounded double intervals for the numeric refinement layer.
//
// Every operation computes in round-to-nearest and then widens each bound by
// one ulp, which encloses the exact result regardless of the rounding mode.

#include "nodal/exactnum.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>

namespace nodal {

namespace detail {
// Same results as std::nextafter towards -inf / +inf, without the libm call.
inline double up(double x) {
  if (x != x || x == std::numeric_limits<double>::infinity()) return x;
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  auto bits = std::bit_cast<std::uint64_t>(x);
  bits += x > 0.0 ? 1 : -1;
  return std::bit_cast<double>(bits);
}
inline double down(double x) { return -up(-x); }
}  // namespace detail

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT(google-explicit-constructor)
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  static Interval hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }
  static Interval symmetric(double r) { return {-r, r}; }

  double mid() const { return lo == hi ? lo : 0.5 * lo + 0.5 * hi; }
  double width() const { return detail::up(hi - lo); }
  double radius() const { return detail::up(0.5 * (hi - lo)); }
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  double mig() const { return contains_zero() ? 0.0 : std::min(std::fabs(lo), std::fabs(hi)); }

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool subset_of(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }
  bool interior_of(const Interval& o) const { return o.lo < lo && hi < o.hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  /// -1 / +1 when the interval excludes zero, 0 otherwise.
  int certain_sign() const { return lo > 0.0 ? 1 : (hi < 0.0 ? -1 : 0); }

  Interval operator-() const { return {-hi, -lo}; }
  Interval& operator+=(const Interval& o) {
    lo = detail::down(lo + o.lo);
    hi = detail::up(hi + o.hi);
    return *this;
  }
  Interval& operator-=(const Interval& o) {
    const double l = detail::down(lo - o.hi);
    hi = detail::up(hi - o.lo);
    lo = l;
    return *this;
  }
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

inline Interval& Interval::operator*=(const Interval& o) {
  if (lo == hi && o.lo == o.hi) {
    const double p = lo * o.lo;
    lo = p == 0.0 && (lo == 0.0 || o.lo == 0.0) ? 0.0 : detail::down(p);
    hi = p == 0.0 && (hi == 0.0 || o.hi == 0.0) ? 0.0 : detail::up(p);
    return *this;
  }
  const double a = lo * o.lo;
  const double b = lo * o.hi;
  const double c = hi * o.lo;
  const double d = hi * o.hi;
  lo = detail::down(std::min({a, b, c, d}));
  hi = detail::up(std::max({a, b, c, d}));
  return *this;
}

inline Interval& Interval::operator/=(const Interval& o) {
  if (o.contains_zero()) {
    lo = -std::numeric_limits<double>::infinity();
    hi = std::numeric_limits<double>::infinity();
    return *this;
  }
  const double a = lo / o.lo;
  const double b = lo / o.hi;
  const double c = hi / o.lo;
  const double d = hi / o.hi;
  lo = detail::down(std::min({a, b, c, d}));
  hi = detail::up(std::max({a, b, c, d}));
  return *this;
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

inline Interval sqr(const Interval& x) {
  if (x.contains_zero()) return {0.0, detail::up(x.mag() * x.mag())};
  const double l = std::fabs(x.lo) < std::fabs(x.hi) ? x.lo : x.hi;
  const double h = std::fabs(x.lo) < std::fabs(x.hi) ? x.hi : x.lo;
  return {detail::down(l * l), detail::up(h * h)};
}

inline Interval sqrt(const Interval& x) {
  return {x.lo <= 0.0 ? 0.0 : detail::down(std::sqrt(x.lo)), detail::up(std::sqrt(std::max(0.0, x.hi)))};
}

inline Interval pow(const Interval& x, unsigned e) {
  Interval r(1.0);
  for (unsigned i = 0; i < e; ++i) r *= x;
  if (e % 2 == 0 && r.lo < 0.0) r.lo = 0.0;
  return r;
}

/// Interval enclosing the exact value of a rational.
inline Interval to_interval(const Rational& r) { return {round_down(r), round_up(r)}; }

/// Interval enclosing the exact value of a + b sqrt5.
inline Interval to_interval(const GoldenNumber& x) {
  if (x.is_rational()) return to_interval(x.rational_part());
  const DyadicInterval d = enclose(x, 60);
  return {round_down(d.lo), round_up(d.hi)};
}

}  // namespace nodal

namespace Eigen {

template <>
struct NumTraits<nodal::Interval> : GenericNumTraits<nodal::Interval> {
  using Real = nodal::Interval;
  using NonInteger = nodal::Interval;
  using Nested = nodal::Interval;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 8
  };
};

}  // namespace Eigen
