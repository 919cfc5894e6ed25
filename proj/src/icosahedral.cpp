#include "nodal/icosahedral.hpp"

#include "nodal/catalog.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>

namespace nodal {

namespace {

bool vec_less(const Vec3G& a, const Vec3G& b) {
  for (int i = 0; i < 3; ++i) {
    const auto c = a(i) <=> b(i);
    if (c != 0) return c < 0;
  }
  return false;
}

bool point_less(const Point4<GoldenNumber>& a, const Point4<GoldenNumber>& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto c = a[i] <=> b[i];
    if (c != 0) return c < 0;
  }
  return false;
}

// Kernel direction of a rank-2 exact 3x3 matrix.
Vec3G kernel_direction(const Mat3G& a) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const Vec3G ri = a.row(i).transpose();
      const Vec3G rj = a.row(j).transpose();
      const Vec3G c = ri.cross(rj);
      if (!c(0).is_zero() || !c(1).is_zero() || !c(2).is_zero()) return c;
    }
  }
  throw GroupError("kernel_direction: matrix rank below 2");
}

}  // namespace

GroupElement::GroupElement(Mat3G m) : m_(std::move(m)) {}

GoldenNumber GroupElement::determinant() const {
  const Mat3G& a = m_;
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

bool GroupElement::is_orthogonal() const {
  const Mat3G p = m_.transpose() * m_;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (p(i, j) != GoldenNumber(i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

bool GroupElement::is_identity() const { return *this == GroupElement::identity(); }

int GroupElement::order() const {
  GroupElement p = *this;
  for (int k = 1; k <= 60; ++k) {
    if (p.is_identity()) return k;
    p = p * *this;
  }
  throw GroupError("element order exceeds 60");
}

Point4<GoldenNumber> GroupElement::apply(const Point4<GoldenNumber>& p) const {
  const Vec3G v(p[0], p[1], p[2]);
  const Vec3G r = m_ * v;
  return {r(0), r(1), r(2), p[3]};
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (a.m_(i, j) != b.m_(i, j)) return false;
    }
  }
  return true;
}

bool operator<(const GroupElement& a, const GroupElement& b) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto c = a.m_(i, j) <=> b.m_(i, j);
      if (c != 0) return c < 0;
    }
  }
  return false;
}

GroupElement pow(const GroupElement& g, int e) {
  GroupElement r;
  for (int i = 0; i < e; ++i) r = r * g;
  return r;
}

std::vector<int> IcosaGroup::order_census() const {
  std::vector<int> census(61, 0);
  for (const auto& g : elements) ++census[static_cast<std::size_t>(g.order())];
  return census;
}

Generators generators() {
  Mat3G c;
  c << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  Mat3G d;
  d << -1, 0, 0, 0, -1, 0, 0, 0, 1;

  // Unit rows of the form (1/2)(+-a, +-b, +-c) with {a,b,c} = {1, tau, tau-1};
  // 1 + tau^2 + (tau-1)^2 = 4 makes each of them a unit vector.
  const GoldenNumber half(Rational(1, 2));
  const std::array<GoldenNumber, 3> mags = {GoldenNumber(1), tau(), tau() - GoldenNumber(1)};
  std::vector<Vec3G> rows;
  std::array<int, 3> perm = {0, 1, 2};
  do {
    for (int s = 0; s < 8; ++s) {
      Vec3G r;
      for (int i = 0; i < 3; ++i) {
        const GoldenNumber m = mags[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] * half;
        r(i) = (s >> i) & 1 ? -m : m;
      }
      rows.push_back(r);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(rows.begin(), rows.end(), vec_less);

  const MultiPoly q = invariant_Q();
  for (const auto& r0 : rows) {
    for (const auto& r1 : rows) {
      if (!r0.dot(r1).is_zero()) continue;
      const Vec3G r2 = r0.cross(r1);
      if (!std::binary_search(rows.begin(), rows.end(), r2, vec_less)) continue;
      Mat3G m;
      m.row(0) = r0.transpose();
      m.row(1) = r1.transpose();
      m.row(2) = r2.transpose();
      const GroupElement g(m);
      if (g.is_identity() || !pow(g, 5).is_identity()) continue;
      if (act_on_poly(g, q) != q) continue;
      return {GroupElement(c), GroupElement(d), g};
    }
  }
  throw GroupError("no five-fold rotation preserves the degree-6 invariant");
}

IcosaGroup generate_group(const std::vector<GroupElement>& gens) {
  for (const auto& g : gens) {
    if (!g.is_orthogonal() || g.determinant() != GoldenNumber(1)) {
      throw GroupError("generator is not an exact rotation");
    }
  }
  std::set<GroupElement> seen{GroupElement::identity()};
  std::deque<GroupElement> frontier{GroupElement::identity()};
  while (!frontier.empty()) {
    const GroupElement cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : gens) {
      GroupElement next = cur * g;
      if (seen.insert(next).second) {
        if (seen.size() > 120) throw GroupError("closure exceeds 120 elements; wrong generators");
        frontier.push_back(std::move(next));
      }
    }
  }
  return IcosaGroup{{seen.begin(), seen.end()}};
}

const IcosaGroup& icosahedral_group() {
  static const IcosaGroup group = [] {
    const Generators g = generators();
    return generate_group({g.cyclic, g.sign_flip, g.five_fold});
  }();
  return group;
}

MultiPoly act_on_poly(const GroupElement& g, const MultiPoly& p) { return substitute_linear(p, g.matrix()); }

Point4<GoldenNumber> canonical_projective(const Point4<GoldenNumber>& p) {
  for (int i = 3; i >= 0; --i) {
    const auto& pivot = p[static_cast<std::size_t>(i)];
    if (pivot.is_zero()) continue;
    const GoldenNumber inv = pivot.inverse();
    Point4<GoldenNumber> out;
    for (std::size_t k = 0; k < 4; ++k) out[k] = p[k] * inv;
    return out;
  }
  throw std::invalid_argument("canonical_projective: zero vector");
}

Vec3G canonical_direction(const Vec3G& v) {
  const auto p = canonical_projective({v(0), v(1), v(2), GoldenNumber(0)});
  return {p[0], p[1], p[2]};
}

std::vector<Point4<GoldenNumber>> orbit(const IcosaGroup& group, const Point4<GoldenNumber>& p) {
  std::vector<Point4<GoldenNumber>> out;
  for (const auto& g : group.elements) out.push_back(canonical_projective(g.apply(p)));
  std::sort(out.begin(), out.end(), point_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vec3G> rotation_axes(const IcosaGroup& group, int order) {
  std::vector<Vec3G> axes;
  for (const auto& g : group.elements) {
    if (g.order() != order) continue;
    const Mat3G a = g.matrix() - Mat3G::Identity();
    axes.push_back(canonical_direction(kernel_direction(a)));
  }
  std::sort(axes.begin(), axes.end(), vec_less);
  axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
  return axes;
}

std::vector<Vec3G> mid_lines(const IcosaGroup& group) { return rotation_axes(group, 2); }

std::vector<Vec3G> symmetry_planes(const IcosaGroup& group) { return rotation_axes(group, 3); }

bool is_invariant(const IcosaGroup& group, const MultiPoly& p) {
  return std::all_of(group.elements.begin(), group.elements.end(),
                     [&](const GroupElement& g) { return act_on_poly(g, p) == p; });
}

}  // namespace nodal
