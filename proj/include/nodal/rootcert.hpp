#pragma once

// Certified real roots: exact Sturm isolation for univariate polynomials over
// Q(sqrt5) and Krawczyk/interval-Newton certification for square systems in
// three variables.

#include "nodal/exactnum.hpp"
#include "nodal/interval.hpp"
#include "nodal/multipoly.hpp"
#include "nodal/univariate.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nodal {

// ---------------------------------------------------------------------------
// Univariate

/// Sturm chain p, p', -rem(p, p'), ... computed exactly.
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

/// Number of distinct real roots of p in (lo, hi]. Endpoints that are roots
/// are divided out exactly before counting. Throws ArithmeticError when p is zero.
int sturm_count(const UniPoly& p, const Rational& lo, const Rational& hi);

/// Interval (lo, hi] holding exactly one real root of `poly`; lo == hi marks a
/// root known exactly.
struct IsolatingInterval {
  Rational lo;
  Rational hi;
  bool simple = true;  // root of multiplicity one in the polynomial isolation was asked for

  bool exact() const { return lo == hi; }
  Rational midpoint() const { return (lo + hi) / 2; }
};

/// Isolates every real root of p in [lo, hi]. The square-free part is used
/// internally; `simple` reports whether the root is simple in p itself.
std::vector<IsolatingInterval> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi);

/// Bisects until the interval is narrower than `width` (exact sign tests on
/// the square-free part).
IsolatingInterval refine_root(const UniPoly& square_free, IsolatingInterval iv, const Rational& width);

/// Cauchy bound: every real root lies in [-b, b].
Rational root_bound(const UniPoly& p);

// ---------------------------------------------------------------------------
// Dense interval polynomials in three variables

using Box3 = Eigen::Matrix<Interval, 3, 1>;
using Vec3d = Eigen::Vector3d;
using Mat3d = Eigen::Matrix3d;
using Mat3I = Eigen::Matrix<Interval, 3, 3>;

Box3 make_box(const Vec3d& center, const Vec3d& radius);
Vec3d box_center(const Box3& b);
Vec3d box_radius(const Box3& b);
double box_max_radius(const Box3& b);
Box3 intersect_box(const Box3& a, const Box3& b);

/// Polynomial in h = (x,y,z) - center with interval coefficients that enclose
/// the exact Taylor coefficients of the source polynomial at `center`.
class TaylorPoly3 {
 public:
  TaylorPoly3() = default;
  /// From a polynomial in x, y, z (w must be absent), expanded at the origin.
  explicit TaylorPoly3(const MultiPoly& p);

  int degree() const { return degree_; }
  const Vec3d& center() const { return center_; }

  const Interval& coeff(int i, int j, int k) const { return c_[index(i, j, k)]; }

  /// Re-expands at center + delta along one axis (delta exactly representable).
  void shift_axis(int axis, double delta);
  void recenter(const Vec3d& new_center);

  /// Enclosure of the value over center + [-r, r].
  Interval range(const Vec3d& r) const;
  /// Enclosure of d/dx_axis over center + [-r, r].
  Interval derivative_range(int axis, const Vec3d& r) const;
  Interval second_derivative_range(int a, int b, const Vec3d& r) const;
  Interval value_at_center() const { return coeff(0, 0, 0); }
  /// Exact-coefficient-midpoint Jacobian row at the center (for Newton steps).
  Vec3d gradient_at_center_mid() const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(j)) * stride_ + static_cast<std::size_t>(k);
  }
  void shift_to(int axis, double target);
  Interval generic_range(const std::array<int, 3>& deriv, const Vec3d& r) const;

  int degree_ = 0;
  std::size_t stride_ = 1;
  Vec3d center_ = Vec3d::Zero();
  std::vector<Interval> c_;
};

// ---------------------------------------------------------------------------
// Square systems

/// Three equations in x, y, z plus optional side conditions that must also
/// vanish at an accepted root (used only for exclusion and final filtering).
struct SquareSystem {
  std::array<MultiPoly, 3> equations;
  std::vector<MultiPoly> side_conditions;
};

struct CertifiedBox {
  /// Region in which the root is proven unique.
  Box3 uniqueness;
  /// Tight enclosure of the root.
  Box3 root;
  /// Enclosures of the side conditions on `root`.
  std::vector<Interval> side_values;
  /// Krawczyk image at acceptance; strictly inside `uniqueness`.
  Box3 krawczyk_image;
};

enum class CertifyStatus { certified, rejected, unknown };

struct CertifyResult {
  CertifyStatus status = CertifyStatus::unknown;
  std::optional<CertifiedBox> box;
};

/// One Krawczyk test on `box`; when certified, the root is tightened to
/// `target_radius` and side conditions are evaluated there.
CertifyResult newton_certify(const SquareSystem& system, const Box3& box, double target_radius = 1e-12);

struct SearchOptions {
  int depth_limit = 60;          // bisections per axis
  double try_radius = 1.0 / 64;  // Krawczyk attempts start below this box radius
  double target_radius = 1e-12;
  std::size_t max_boxes = 20'000'000;
  /// Called for every box left undecided; used for --debug-boxes.
  std::function<void(const Box3&)> on_unresolved;
};

struct SearchReport {
  std::vector<CertifiedBox> roots;      // sorted by root lower corner
  std::vector<Box3> unresolved;         // nonempty means the search is incomplete
  std::size_t boxes_visited = 0;
  bool box_budget_exhausted = false;

  bool complete() const { return unresolved.empty() && !box_budget_exhausted; }
};

/// Finds every root of the system in `region` whose side conditions are not
/// excluded. Boxes still undecided at the depth limit are reported, never dropped.
SearchReport subdivide_search(const SquareSystem& system, const Box3& region, const SearchOptions& options = {});

}  // namespace nodal
