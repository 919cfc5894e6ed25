#pragma once

// Dense univariate polynomials over Q(sqrt5).

#include "nodal/exactnum.hpp"
#include "nodal/interval.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace nodal {

class UniPoly {
 public:
  UniPoly() = default;
  /// Coefficients from the constant term upward; trailing zeros are trimmed.
  explicit UniPoly(std::vector<GoldenNumber> coeffs);
  static UniPoly constant(GoldenNumber c) { return UniPoly({std::move(c)}); }
  static UniPoly monomial(GoldenNumber c, int power);
  static UniPoly t() { return monomial(GoldenNumber(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<GoldenNumber>& coeffs() const { return coeffs_; }
  GoldenNumber coeff(int i) const;
  const GoldenNumber& leading() const { return coeffs_.back(); }

  GoldenNumber operator()(const GoldenNumber& t) const;
  Interval operator()(const Interval& t) const;

  UniPoly derivative() const;
  UniPoly monic() const;
  /// p(-t).
  UniPoly reflected() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const GoldenNumber& c);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const GoldenNumber& c) { return a *= c; }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// Interval enclosures of the exact coefficients.
  std::vector<Interval> interval_coeffs() const;

 private:
  void trim();
  std::vector<GoldenNumber> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const UniPoly& p);

/// Euclidean division a = q*b + r with deg r < deg b.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic greatest common divisor; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// p / gcd(p, p'), monic.
UniPoly square_free_part(const UniPoly& p);

}  // namespace nodal
