#pragma once

// Sparse polynomials over Q(sqrt5) in the homogeneous coordinates x, y, z, w.

#include "nodal/exactnum.hpp"
#include "nodal/interval.hpp"
#include "nodal/univariate.hpp"

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nodal {

enum class Var : int { x = 0, y = 1, z = 2, w = 3 };

using Exponent = std::array<std::uint8_t, 4>;

inline int total_degree(const Exponent& e) { return e[0] + e[1] + e[2] + e[3]; }

/// Graded order, highest total degree first, ties broken lexicographically
/// with x > y > z > w.
struct MonomialOrder {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

template <typename T>
using Point4 = std::array<T, 4>;

using Vec3G = Eigen::Matrix<GoldenNumber, 3, 1>;
using Mat3G = Eigen::Matrix<GoldenNumber, 3, 3>;

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, GoldenNumber, MonomialOrder>;

  MultiPoly() = default;
  MultiPoly(GoldenNumber c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c) : MultiPoly(GoldenNumber(c)) {}  // NOLINT(google-explicit-constructor)
  static MultiPoly variable(Var v);
  static MultiPoly term(GoldenNumber c, Exponent e);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Maximum total degree; 0 for the zero polynomial.
  int degree() const { return degree_; }
  int degree_in(Var v) const;
  bool is_homogeneous() const;
  bool is_constant() const { return degree_ == 0; }
  /// Constant coefficient.
  GoldenNumber constant_term() const;
  GoldenNumber coeff(const Exponent& e) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const GoldenNumber& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const GoldenNumber& c) { return a *= c; }
  friend MultiPoly operator*(const GoldenNumber& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  GoldenNumber evaluate(const Point4<GoldenNumber>& pt) const;
  Interval evaluate(const Point4<Interval>& pt) const;
  double evaluate(const Point4<double>& pt) const;

  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const GoldenNumber& c);
  void recompute_degree();

  TermMap terms_;
  int degree_ = 0;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

/// Coefficients enclosed once, for repeated interval or double evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const MultiPoly& p);

  int degree() const { return degree_; }
  Interval evaluate(const Point4<Interval>& pt) const;
  /// Midpoint coefficients in plain double arithmetic; not rigorous.
  double evaluate(const Point4<double>& pt) const;

 private:
  struct Term {
    Exponent e;
    Interval c;
    double mid;
  };
  std::vector<Term> terms_;
  int degree_ = 0;
};

MultiPoly pow(const MultiPoly& p, unsigned e);

GoldenNumber evaluate(const MultiPoly& p, const Point4<GoldenNumber>& pt);

MultiPoly derivative(const MultiPoly& p, Var v);
std::array<MultiPoly, 4> gradient(const MultiPoly& p);
using PolyMatrix4 = std::array<std::array<MultiPoly, 4>, 4>;
PolyMatrix4 hessian(const MultiPoly& p);

struct DegreeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Multiplies each monomial by the power of w that lifts it to target_degree.
/// Throws DegreeError when p already exceeds target_degree or contains w.
MultiPoly homogenize(const MultiPoly& p, int target_degree);
/// Sets w = 1.
MultiPoly dehomogenize(const MultiPoly& p);
/// Sets variable v = value.
MultiPoly specialize(const MultiPoly& p, Var v, const GoldenNumber& value);

/// Substitutes each variable by the given polynomial.
MultiPoly compose(const MultiPoly& p, const std::array<MultiPoly, 4>& images);

/// p(M * (x,y,z)^T, w): linear change of the spatial coordinates.
MultiPoly substitute_linear(const MultiPoly& p, const Mat3G& m);

/// p(base + t * dir) as an exact univariate polynomial in t.
UniPoly restrict_to_line(const MultiPoly& p, const Point4<GoldenNumber>& base,
                         const Point4<GoldenNumber>& dir);

}  // namespace nodal
