#pragma once

// The rotation group of the icosahedron acting on R^3 (w is left fixed).

#include "nodal/exactnum.hpp"
#include "nodal/multipoly.hpp"

#include <stdexcept>
#include <tuple>
#include <vector>

namespace nodal {

/// Exact orthogonal 3x3 matrix with determinant +1.
class GroupElement {
 public:
  GroupElement() : m_(Mat3G::Identity()) {}
  explicit GroupElement(Mat3G m);

  static GroupElement identity() { return {}; }

  const Mat3G& matrix() const { return m_; }
  GoldenNumber determinant() const;
  bool is_orthogonal() const;
  bool is_identity() const;
  /// Smallest k >= 1 with g^k = identity (searched up to 60).
  int order() const;
  GroupElement inverse() const { return GroupElement(m_.transpose()); }

  Vec3G apply(const Vec3G& v) const { return m_ * v; }
  Point4<GoldenNumber> apply(const Point4<GoldenNumber>& p) const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return GroupElement(Mat3G(a.m_ * b.m_));
  }
  friend bool operator==(const GroupElement& a, const GroupElement& b);
  /// Lexicographic order on entries, for deterministic containers.
  friend bool operator<(const GroupElement& a, const GroupElement& b);

 private:
  Mat3G m_;
};

GroupElement pow(const GroupElement& g, int e);

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IcosaGroup {
  std::vector<GroupElement> elements;

  std::size_t size() const { return elements.size(); }
  /// Number of elements of each order, indexed by order.
  std::vector<int> order_census() const;
};

struct Generators {
  GroupElement cyclic;      // (x,y,z) -> (y,z,x)
  GroupElement sign_flip;   // (x,y,z) -> (-x,-y,z)
  GroupElement five_fold;   // order 5, entries in (1/2){0, +-1, +-tau, +-(tau-1)}
};

/// Searches the half-golden matrices for the first order-5 rotation that
/// preserves the degree-6 invariant; the result is exact.
Generators generators();

/// Closure under multiplication. Throws GroupError beyond 120 elements or when
/// a generator is not an exact rotation.
IcosaGroup generate_group(const std::vector<GroupElement>& gens);

/// The 60-element group generated by generators().
const IcosaGroup& icosahedral_group();

/// p(g (x,y,z), w).
MultiPoly act_on_poly(const GroupElement& g, const MultiPoly& p);

/// Scales so that the last nonzero coordinate equals 1. Throws on the zero vector.
Point4<GoldenNumber> canonical_projective(const Point4<GoldenNumber>& p);
Vec3G canonical_direction(const Vec3G& v);

/// Distinct canonical images of a projective point.
std::vector<Point4<GoldenNumber>> orbit(const IcosaGroup& group, const Point4<GoldenNumber>& p);

/// Rotation axes (canonical directions) of all elements of the given order.
std::vector<Vec3G> rotation_axes(const IcosaGroup& group, int order);

/// The 15 axes of the order-2 rotations.
std::vector<Vec3G> mid_lines(const IcosaGroup& group);

/// Normals of the 10 planes through the origin orthogonal to the 3-fold axes.
std::vector<Vec3G> symmetry_planes(const IcosaGroup& group);

/// True when g(p) = p for every element; used by the invariance suite.
bool is_invariant(const IcosaGroup& group, const MultiPoly& p);

}  // namespace nodal
