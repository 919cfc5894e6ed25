#include "nodal/singularities.hpp"

#include "nodal/parse.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace nodal {

std::string to_string(SingularType t) {
  switch (t) {
    case SingularType::A1: return "A1";
    case SingularType::A2: return "A2";
    case SingularType::degenerate: return "degenerate";
    case SingularType::unknown: return "degenerate(unknown)";
  }
  return "degenerate(unknown)";
}

// ---------------------------------------------------------------------------
// Charts

namespace {

std::array<int, 3> chart_axes(int chart) {
  std::array<int, 3> out{};
  int n = 0;
  for (int v = 0; v < 4; ++v) {
    if (v != chart) out[static_cast<std::size_t>(n++)] = v;
  }
  return out;
}

Interval ival(const GoldenNumber& g) { return to_interval(g); }

Point4<Interval> ival(const Point4<GoldenNumber>& p) { return {ival(p[0]), ival(p[1]), ival(p[2]), ival(p[3])}; }

bool box_subset(const Box3& a, const Box3& b) {
  for (int i = 0; i < 3; ++i) {
    if (!a(i).subset_of(b(i))) return false;
  }
  return true;
}

bool box_meets(const Box3& a, const Box3& b) {
  for (int i = 0; i < 3; ++i) {
    if (!a(i).intersects(b(i))) return false;
  }
  return true;
}

Box3 hull_box(const Box3& a, const Box3& b) {
  Box3 out;
  for (int i = 0; i < 3; ++i) out(i) = hull(a(i), b(i));
  return out;
}

}  // namespace

MultiPoly chart_polynomial(const MultiPoly& F, int chart) {
  const auto axes = chart_axes(chart);
  std::array<MultiPoly, 4> images;
  images[static_cast<std::size_t>(chart)] = MultiPoly(1);
  const Var targets[3] = {Var::x, Var::y, Var::z};
  for (int i = 0; i < 3; ++i) images[static_cast<std::size_t>(axes[static_cast<std::size_t>(i)])] = MultiPoly::variable(targets[i]);
  return compose(F, images);
}

Point4<Interval> chart_to_projective(int chart, const Box3& box) {
  Point4<Interval> p;
  p[static_cast<std::size_t>(chart)] = Interval(1.0);
  const auto axes = chart_axes(chart);
  for (int i = 0; i < 3; ++i) p[static_cast<std::size_t>(axes[static_cast<std::size_t>(i)])] = box(i);
  return p;
}

std::optional<Box3> projective_to_chart(int chart, const Point4<Interval>& p) {
  const Interval& d = p[static_cast<std::size_t>(chart)];
  if (d.contains_zero()) return std::nullopt;
  const auto axes = chart_axes(chart);
  Box3 b;
  for (int i = 0; i < 3; ++i) b(i) = p[static_cast<std::size_t>(axes[static_cast<std::size_t>(i)])] / d;
  return b;
}

// ---------------------------------------------------------------------------
// Search

namespace {

SquareSystem chart_system(const MultiPoly& f) {
  return {{derivative(f, Var::x), derivative(f, Var::y), derivative(f, Var::z)}, {f}};
}

Box3 chart_region(double h) {
  Box3 b;
  for (int i = 0; i < 3; ++i) b(i) = Interval(-h, h);
  return b;
}

struct ChartResult {
  SearchReport search;
  MultiPoly f;
};

SingularPoint make_point(int chart, const CertifiedBox& cb, const MultiPoly& f) {
  SingularPoint p;
  p.chart = chart;
  p.box = cb.root;
  p.uniqueness = cb.uniqueness;
  p.coords = chart_to_projective(chart, cb.root);
  for (std::size_t i = 0; i < 4; ++i) p.representative[i] = p.coords[i].mid();
  p.value = cb.side_values.empty() ? f.evaluate(Point4<Interval>{cb.root(0), cb.root(1), cb.root(2), Interval(1.0)})
                                   : cb.side_values.front();
  return p;
}

enum class Match { distinct, same, ambiguous };

Match compare_points(const MultiPoly& f_other, const SingularPoint& a, const SingularPoint& b) {
  if (const auto m = projective_to_chart(b.chart, a.coords)) {
    if (box_subset(*m, b.uniqueness)) return Match::same;
  }
  if (const auto m = projective_to_chart(a.chart, b.coords)) {
    if (box_subset(*m, a.uniqueness)) return Match::same;
  }
  // Disjoint enclosures of the two roots mean distinct points.
  const auto m = projective_to_chart(b.chart, a.coords);
  if (!m || !box_meets(*m, b.box)) return Match::distinct;
  // Recertify a box covering both enclosures in b's chart.
  Box3 both = hull_box(*m, b.box);
  const Vec3d c = box_center(both);
  Vec3d r = box_radius(both);
  for (int i = 0; i < 3; ++i) r(i) = std::max(4 * r(i), 1e-9);
  const CertifyResult res = newton_certify(chart_system(f_other), make_box(c, r));
  if (res.status == CertifyStatus::certified && box_subset(*m, res.box->uniqueness) &&
      box_subset(b.box, res.box->uniqueness)) {
    return Match::same;
  }
  return Match::ambiguous;
}

}  // namespace

SingularReport find_singular_points(const MultiPoly& F, const FindOptions& options) {
  if (!F.is_homogeneous() || F.degree() < 2) throw std::invalid_argument("find_singular_points: F must be homogeneous of degree >= 2");
  std::array<ChartResult, 4> results;
  const auto run_chart = [&](int slot) {
    const int chart = kChartOrder[slot];
    ChartResult& out = results[static_cast<std::size_t>(slot)];
    out.f = chart_polynomial(F, chart);
    SearchOptions so;
    so.depth_limit = options.depth_limit;
    so.try_radius = options.try_radius;
    so.target_radius = options.target_radius;
    so.max_boxes = options.max_boxes;
    out.search = subdivide_search(chart_system(out.f), chart_region(options.chart_half_width), so);
  };
  const unsigned threads = std::max(1u, std::min(options.threads, 4u));
  if (threads == 1) {
    for (int s = 0; s < 4; ++s) run_chart(s);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int s = next++; s < 4; s = next++) run_chart(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  SingularReport report;
  for (int s = 0; s < 4; ++s) {
    const int chart = kChartOrder[s];
    const ChartResult& res = results[static_cast<std::size_t>(s)];
    report.boxes_visited += res.search.boxes_visited;
    report.per_chart[static_cast<std::size_t>(s)] = res.search.roots.size();
    for (const auto& b : res.search.unresolved) {
      report.unresolved.push_back({chart, b});
      if (options.on_unresolved) options.on_unresolved(report.unresolved.back());
    }
    for (const auto& cb : res.search.roots) {
      SingularPoint p = make_point(chart, cb, res.f);
      bool duplicate = false;
      for (const auto& kept : report.points) {
        int kept_slot = 0;
        while (kChartOrder[kept_slot] != kept.chart) ++kept_slot;
        const Match m = compare_points(results[static_cast<std::size_t>(kept_slot)].f, p, kept);
        if (m == Match::same) {
          duplicate = true;
          break;
        }
        if (m == Match::ambiguous) {
          // Identity undecided: the box is reported so the count is not trusted.
          report.unresolved.push_back({chart, cb.root});
          if (options.on_unresolved) options.on_unresolved(report.unresolved.back());
          duplicate = true;
          break;
        }
      }
      if (!duplicate) report.points.push_back(std::move(p));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

int exact_rank(Eigen::Matrix<GoldenNumber, 3, 3> m) {
  int rank = 0;
  for (int col = 0; col < 3 && rank < 3; ++col) {
    int pivot = -1;
    for (int r = rank; r < 3; ++r) {
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(rank).swap(m.row(pivot));
    for (int r = 0; r < 3; ++r) {
      if (r == rank || m(r, col).is_zero()) continue;
      const GoldenNumber factor = m(r, col) / m(rank, col);
      for (int c = 0; c < 3; ++c) m(r, c) -= factor * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

int canonical_chart(const Point4<GoldenNumber>& p) {
  for (int k = 3; k >= 0; --k) {
    if (!p[static_cast<std::size_t>(k)].is_zero()) return k;
  }
  throw std::invalid_argument("classify_exact: zero vector");
}

Interval det3(const Mat3I& h) {
  return h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) - h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
         h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0));
}

}  // namespace

Classification classify_exact(const MultiPoly& F, const Point4<GoldenNumber>& point) {
  const int chart = canonical_chart(point);
  const GoldenNumber scale = point[static_cast<std::size_t>(chart)].inverse();
  const auto axes = chart_axes(chart);
  const MultiPoly f = chart_polynomial(F, chart);
  Point4<GoldenNumber> q{GoldenNumber(0), GoldenNumber(0), GoldenNumber(0), GoldenNumber(1)};
  for (int i = 0; i < 3; ++i) q[static_cast<std::size_t>(i)] = point[static_cast<std::size_t>(axes[static_cast<std::size_t>(i)])] * scale;
  if (!f.evaluate(q).is_zero()) throw std::invalid_argument("classify_exact: point is not on the surface");
  const Var vars[3] = {Var::x, Var::y, Var::z};
  std::array<MultiPoly, 3> grad;
  for (int i = 0; i < 3; ++i) {
    grad[static_cast<std::size_t>(i)] = derivative(f, vars[i]);
    if (!grad[static_cast<std::size_t>(i)].evaluate(q).is_zero()) throw std::invalid_argument("classify_exact: point is not singular");
  }
  Eigen::Matrix<GoldenNumber, 3, 3> h;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) h(i, j) = derivative(grad[static_cast<std::size_t>(i)], vars[j]).evaluate(q);
  }
  const int rank = exact_rank(h);
  if (rank == 3) return {SingularType::A1, 0};
  if (rank == 2) {
    // Kernel direction from the cross product of two independent rows.
    Vec3G k = Vec3G::Zero();
    for (int a = 0; a < 3 && k.isZero(); ++a) {
      for (int b = a + 1; b < 3 && k.isZero(); ++b) {
        const Vec3G ra = h.row(a).transpose();
        const Vec3G rb = h.row(b).transpose();
        k = ra.cross(rb);
      }
    }
    const UniPoly along = restrict_to_line(f, q, {k(0), k(1), k(2), GoldenNumber(0)});
    if (!along.coeff(3).is_zero()) return {SingularType::A2, 1};
    return {SingularType::degenerate, 1};
  }
  return {SingularType::degenerate, 3 - rank};
}

Classification classify(const MultiPoly& F, const SingularPoint& point) {
  const MultiPoly f = chart_polynomial(F, point.chart);
  const Var vars[3] = {Var::x, Var::y, Var::z};
  const Point4<Interval> at{point.box(0), point.box(1), point.box(2), Interval(1.0)};
  Mat3I h;
  for (int i = 0; i < 3; ++i) {
    const MultiPoly fi = derivative(f, vars[i]);
    for (int j = i; j < 3; ++j) {
      h(i, j) = CompiledPoly(derivative(fi, vars[j])).evaluate(at);
      h(j, i) = h(i, j);
    }
  }
  if (!det3(h).contains_zero()) return {SingularType::A1, 0};
  if (point.exact) return classify_exact(F, *point.exact);
  return {SingularType::unknown, -1};
}

// ---------------------------------------------------------------------------
// Orbits and location

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

Point4<Interval> act(const Mat3I& m, const Point4<Interval>& p) {
  Point4<Interval> out;
  for (int i = 0; i < 3; ++i) {
    out[static_cast<std::size_t>(i)] = m(i, 0) * p[0] + m(i, 1) * p[1] + m(i, 2) * p[2];
  }
  out[3] = p[3];
  return out;
}

Mat3I to_interval_matrix(const Mat3G& m) {
  Mat3I out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = ival(m(i, j));
  }
  return out;
}

bool on_line(const Point4<Interval>& p, const Vec3G& d) {
  const Interval dx = ival(d(0)), dy = ival(d(1)), dz = ival(d(2));
  return (p[1] * dz - p[2] * dy).contains_zero() && (p[2] * dx - p[0] * dz).contains_zero() &&
         (p[0] * dy - p[1] * dx).contains_zero();
}

bool on_plane(const Point4<Interval>& p, const Vec3G& n) {
  return (p[0] * ival(n(0)) + p[1] * ival(n(1)) + p[2] * ival(n(2))).contains_zero();
}

}  // namespace

OrbitReport orbit_decompose(std::vector<SingularPoint>& points, const IcosaGroup& group) {
  OrbitReport report;
  const std::size_t n = points.size();
  UnionFind uf(n);
  for (const auto& g : group.elements) {
    const Mat3I m = to_interval_matrix(g.matrix());
    for (std::size_t i = 0; i < n; ++i) {
      const Point4<Interval> image = act(m, points[i].coords);
      bool found = false;
      for (std::size_t j = 0; j < n && !found; ++j) {
        const auto b = projective_to_chart(points[j].chart, image);
        if (b && box_subset(*b, points[j].uniqueness)) {
          uf.unite(static_cast<int>(i), static_cast<int>(j));
          found = true;
        }
      }
      if (!found) ++report.missing_images;
    }
  }
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    const int root = uf.find(static_cast<int>(i));
    auto it = index.find(root);
    if (it == index.end()) {
      it = index.emplace(root, report.orbits.size()).first;
      Orbit o;
      o.representative = static_cast<int>(i);
      o.type = points[i].type.type;
      o.on_mid_line = points[i].mid_line.has_value();
      o.on_plane = points[i].plane.has_value();
      o.on_mirror_plane = points[i].mirror_plane.has_value();
      o.axis_order = points[i].axis_order;
      report.orbits.push_back(o);
    }
    Orbit& o = report.orbits[it->second];
    o.members.push_back(static_cast<int>(i));
    ++o.size;
    if (points[i].type.type != o.type) o.type = SingularType::unknown;
    points[i].orbit = static_cast<int>(it->second);
  }
  return report;
}

SpecialGeometry special_geometry(const IcosaGroup& group) {
  return {mid_lines(group), symmetry_planes(group), rotation_axes(group, 3), rotation_axes(group, 5)};
}

void locate(std::vector<SingularPoint>& points, const SpecialGeometry& geometry) {
  for (auto& p : points) {
    p.mid_line.reset();
    p.plane.reset();
    p.mirror_plane.reset();
    p.axis_order.reset();
    p.axis.reset();
    // The origin lies on every line; it is not tagged.
    if (p.coords[0].contains_zero() && p.coords[1].contains_zero() && p.coords[2].contains_zero()) continue;
    for (std::size_t i = 0; i < geometry.mid_lines.size(); ++i) {
      if (on_line(p.coords, geometry.mid_lines[i])) {
        p.mid_line = static_cast<int>(i);
        p.axis_order = 2;
        p.axis = static_cast<int>(i);
        break;
      }
    }
    for (std::size_t i = 0; i < geometry.three_fold.size() && !p.axis_order; ++i) {
      if (on_line(p.coords, geometry.three_fold[i])) {
        p.axis_order = 3;
        p.axis = static_cast<int>(i);
      }
    }
    for (std::size_t i = 0; i < geometry.five_fold.size() && !p.axis_order; ++i) {
      if (on_line(p.coords, geometry.five_fold[i])) {
        p.axis_order = 5;
        p.axis = static_cast<int>(i);
      }
    }
    for (std::size_t i = 0; i < geometry.planes.size(); ++i) {
      if (on_plane(p.coords, geometry.planes[i])) {
        p.plane = static_cast<int>(i);
        break;
      }
    }
    for (std::size_t i = 0; i < geometry.mid_lines.size(); ++i) {
      if (on_plane(p.coords, geometry.mid_lines[i])) {
        p.mirror_plane = static_cast<int>(i);
        break;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Exact solving on lines

namespace {

// Small-height element of Q(sqrt5) in [lo, hi] that is a root of q, if any.
std::optional<GoldenNumber> recognize_root(const UniPoly& q, const Rational& lo, const Rational& hi) {
  const double mid = (round_down(lo) + round_up(hi)) / 2;
  const double s5 = std::sqrt(5.0);
  for (long d = 1; d <= 64; ++d) {
    for (long b = -32; b <= 32; ++b) {
      const double a = std::round(mid * static_cast<double>(d) - static_cast<double>(b) * s5);
      const GoldenNumber cand(Rational(static_cast<long>(a), d), Rational(b, d));
      const double v = cand.to_double();
      if (std::fabs(v - mid) > 1e-6 * (1 + std::fabs(mid))) continue;
      if (!q(cand).is_zero()) continue;
      if (cand < GoldenNumber(lo) || cand > GoldenNumber(hi)) continue;
      if (lo != hi && cand == GoldenNumber(lo)) continue;  // interval is (lo, hi]
      return cand;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<LinePoint> exact_midline_solve(const MultiPoly& F, const Vec3G& dir) {
  if (dir.isZero()) throw std::invalid_argument("exact_midline_solve: zero direction");
  std::vector<LinePoint> out;
  const Point4<GoldenNumber> base{GoldenNumber(0), GoldenNumber(0), GoldenNumber(0), GoldenNumber(1)};
  const Point4<GoldenNumber> d4{dir(0), dir(1), dir(2), GoldenNumber(0)};
  const auto grad = gradient(F);

  UniPoly g = restrict_to_line(F, base, d4);
  for (const auto& p : grad) {
    const UniPoly r = restrict_to_line(p, base, d4);
    g = g.is_zero() ? r : (r.is_zero() ? g : gcd(g, r));
  }
  if (g.is_zero()) throw std::invalid_argument("exact_midline_solve: the line lies in the singular locus");
  if (g.degree() > 0) {
    const Rational bound = root_bound(g);
    const UniPoly sf = square_free_part(g);
    for (IsolatingInterval iv : isolate_roots(g, -bound, bound)) {
      LinePoint lp;
      std::optional<GoldenNumber> t;
      if (iv.exact()) t = GoldenNumber(iv.lo);
      else if (sf.degree() == 1) t = -sf.coeff(0) / sf.coeff(1);
      else t = recognize_root(sf, iv.lo, iv.hi);
      if (!t) iv = refine_root(sf, iv, Rational(1, 1L << 62));
      lp.lo = iv.lo;
      lp.hi = iv.hi;
      if (t) lp.exact = Point4<GoldenNumber>{*t * dir(0), *t * dir(1), *t * dir(2), GoldenNumber(1)};
      out.push_back(lp);
    }
  }
  bool at_inf = F.evaluate(d4).is_zero();
  for (const auto& p : grad) at_inf = at_inf && p.evaluate(d4).is_zero();
  if (at_inf) {
    LinePoint lp;
    lp.at_infinity = true;
    lp.exact = d4;
    out.push_back(lp);
  }
  return out;
}

namespace {

Point4<Interval> line_point_enclosure(const LinePoint& lp, const Vec3G& dir) {
  if (lp.exact) return ival(*lp.exact);
  const Interval t(round_down(lp.lo), round_up(lp.hi));
  return {t * ival(dir(0)), t * ival(dir(1)), t * ival(dir(2)), Interval(1.0)};
}

}  // namespace

void confirm_on_axes(const MultiPoly& F, std::vector<SingularPoint>& points, const SpecialGeometry& geometry) {
  std::map<std::pair<int, int>, std::vector<LinePoint>> cache;
  const auto line_dir = [&](int order, int idx) -> const Vec3G& {
    const auto& v = order == 2 ? geometry.mid_lines : order == 3 ? geometry.three_fold : geometry.five_fold;
    return v[static_cast<std::size_t>(idx)];
  };
  for (auto& p : points) {
    if (!p.axis_order || !p.axis) continue;
    const auto key = std::make_pair(*p.axis_order, *p.axis);
    auto it = cache.find(key);
    const Vec3G& dir = line_dir(key.first, key.second);
    if (it == cache.end()) it = cache.emplace(key, exact_midline_solve(F, dir)).first;
    for (const auto& lp : it->second) {
      const auto b = projective_to_chart(p.chart, line_point_enclosure(lp, dir));
      if (b && box_subset(*b, p.uniqueness)) {
        p.exactly_confirmed = true;
        if (lp.exact) p.exact = *lp.exact;
        break;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Pipeline

SurfaceAnalysis analyze_surface(const MultiPoly& F, const FindOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  SurfaceAnalysis a;
  a.report = find_singular_points(F, options);
  const IcosaGroup& group = icosahedral_group();
  const SpecialGeometry geometry = special_geometry(group);
  locate(a.report.points, geometry);
  confirm_on_axes(F, a.report.points, geometry);
  for (auto& p : a.report.points) {
    p.type = classify(F, p);
    if (p.type.type == SingularType::A1) ++a.a1_count;
  }
  a.orbits = orbit_decompose(a.report.points, group);
  a.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return a;
}

std::vector<ScanEntry> family_scan(const SurfaceFamily& family, const std::vector<std::vector<GoldenNumber>>& grid,
                                   const FindOptions& options) {
  std::vector<ScanEntry> out;
  for (const auto& params : grid) {
    if (params.size() != family.parameters.size()) throw std::invalid_argument("family_scan: wrong number of parameters");
    const SurfaceAnalysis a = analyze_surface(family.form(params), options);
    ScanEntry e;
    e.parameters = params;
    e.count = a.count();
    e.complete = a.report.complete() && a.orbits.missing_images == 0;
    for (const auto& o : a.orbits.orbits) e.orbit_sizes.push_back(o.size);
    std::sort(e.orbit_sizes.begin(), e.orbit_sizes.end());
    e.seconds = a.seconds;
    out.push_back(std::move(e));
  }
  int generic = -1;
  for (const auto& e : out) {
    if (e.complete && (generic < 0 || e.count < generic)) generic = e.count;
  }
  for (auto& e : out) e.above_generic = e.complete && generic >= 0 && e.count > generic;
  return out;
}

// ---------------------------------------------------------------------------
// Decic candidates

namespace {

// R restricted to the mirror plane y = 0, written in u = x^2, v = z^2.
MultiPoly plane_invariant() {
  const MultiPoly r = specialize(invariant_R(), Var::y, GoldenNumber(0));
  MultiPoly out;
  for (const auto& [e, c] : r.terms()) {
    if (e[0] % 2 != 0 || e[2] % 2 != 0) throw std::logic_error("plane_invariant: R is not even on the mirror plane");
    out += MultiPoly::term(c, {static_cast<std::uint8_t>(e[0] / 2), static_cast<std::uint8_t>(e[2] / 2), 0, 0});
  }
  return out;
}

// Polynomials in x = u, y = v, z = c, evaluated in doubles at (u, v, c, 1).
struct ScanPolys {
  CompiledPoly r, ru, rv, l, lu, lv, lc;
  CompiledPoly nu, nv;  // numerators of the gradient of R / L^2, divided by L^2
  std::array<CompiledPoly, 3> dnu, dnv;

  ScanPolys() {
    const MultiPoly R = plane_invariant();
    const MultiPoly L = parse_polynomial("(x + y - 1)(x + y - z)");
    const MultiPoly Ru = derivative(R, Var::x), Rv = derivative(R, Var::y);
    const MultiPoly Lu = derivative(L, Var::x), Lv = derivative(L, Var::y), Lc = derivative(L, Var::z);
    const MultiPoly Nu = L * Ru - MultiPoly(2) * R * Lu;
    const MultiPoly Nv = L * Rv - MultiPoly(2) * R * Lv;
    r = CompiledPoly(R);
    ru = CompiledPoly(Ru);
    rv = CompiledPoly(Rv);
    l = CompiledPoly(L);
    lu = CompiledPoly(Lu);
    lv = CompiledPoly(Lv);
    lc = CompiledPoly(Lc);
    nu = CompiledPoly(Nu);
    nv = CompiledPoly(Nv);
    const Var vars[3] = {Var::x, Var::y, Var::z};
    for (int i = 0; i < 3; ++i) {
      dnu[static_cast<std::size_t>(i)] = CompiledPoly(derivative(Nu, vars[i]));
      dnv[static_cast<std::size_t>(i)] = CompiledPoly(derivative(Nv, vars[i]));
    }
  }
};

Point4<double> at(double u, double v, double c) { return {u, v, c, 1.0}; }

// Critical points of R / L^2 in the open quadrant for fixed c.
std::vector<Eigen::Vector2d> critical_points(const ScanPolys& sp, double c) {
  std::vector<Eigen::Vector2d> out;
  // Starts are denser near the axes, where critical points crowd together.
  std::vector<double> starts;
  for (double s = 1.0 / 64; s < 0.5; s *= 1.5) starts.push_back(s);
  for (double s = 0.5; s < 4.5; s += 0.125) starts.push_back(s);
  for (const double u0 : starts) {
    for (const double v0 : starts) {
      Eigen::Vector2d p(u0, v0);
      bool ok = false;
      for (int it = 0; it < 40; ++it) {
        const auto q = at(p(0), p(1), c);
        const Eigen::Vector2d g(sp.nu.evaluate(q), sp.nv.evaluate(q));
        Eigen::Matrix2d j;
        j << sp.dnu[0].evaluate(q), sp.dnu[1].evaluate(q), sp.dnv[0].evaluate(q), sp.dnv[1].evaluate(q);
        const Eigen::Vector2d step = j.fullPivLu().solve(g);
        if (!step.allFinite()) break;
        p -= step.cwiseMax(-0.5).cwiseMin(0.5);
        if (step.norm() < 1e-13 * (1 + p.norm())) {
          ok = true;
          break;
        }
      }
      if (!ok || p(0) < 1e-6 || p(1) < 1e-6 || p.norm() > 20) continue;
      if (std::fabs(sp.l.evaluate(at(p(0), p(1), c))) < 1e-8) continue;
      const bool seen = std::any_of(out.begin(), out.end(), [&](const Eigen::Vector2d& o) { return (o - p).norm() < 1e-7; });
      if (!seen) out.push_back(p);
    }
  }
  return out;
}

// Newton on (u1, v1, u2, v2, c): both points critical with equal critical value.
std::optional<Eigen::Matrix<double, 5, 1>> coincidence(const ScanPolys& sp, Eigen::Matrix<double, 5, 1> q, double& residual) {
  using Vec5 = Eigen::Matrix<double, 5, 1>;
  using Mat5 = Eigen::Matrix<double, 5, 5>;
  for (int it = 0; it < 60; ++it) {
    const auto p1 = at(q(0), q(1), q(4));
    const auto p2 = at(q(2), q(3), q(4));
    const double r1 = sp.r.evaluate(p1), r2 = sp.r.evaluate(p2);
    const double l1 = sp.l.evaluate(p1), l2 = sp.l.evaluate(p2);
    Vec5 f;
    f << sp.nu.evaluate(p1), sp.nv.evaluate(p1), sp.nu.evaluate(p2), sp.nv.evaluate(p2), r1 * l2 * l2 - r2 * l1 * l1;
    Mat5 j = Mat5::Zero();
    j(0, 0) = sp.dnu[0].evaluate(p1);
    j(0, 1) = sp.dnu[1].evaluate(p1);
    j(0, 4) = sp.dnu[2].evaluate(p1);
    j(1, 0) = sp.dnv[0].evaluate(p1);
    j(1, 1) = sp.dnv[1].evaluate(p1);
    j(1, 4) = sp.dnv[2].evaluate(p1);
    j(2, 2) = sp.dnu[0].evaluate(p2);
    j(2, 3) = sp.dnu[1].evaluate(p2);
    j(2, 4) = sp.dnu[2].evaluate(p2);
    j(3, 2) = sp.dnv[0].evaluate(p2);
    j(3, 3) = sp.dnv[1].evaluate(p2);
    j(3, 4) = sp.dnv[2].evaluate(p2);
    j(4, 0) = sp.ru.evaluate(p1) * l2 * l2 - 2 * r2 * l1 * sp.lu.evaluate(p1);
    j(4, 1) = sp.rv.evaluate(p1) * l2 * l2 - 2 * r2 * l1 * sp.lv.evaluate(p1);
    j(4, 2) = 2 * r1 * l2 * sp.lu.evaluate(p2) - sp.ru.evaluate(p2) * l1 * l1;
    j(4, 3) = 2 * r1 * l2 * sp.lv.evaluate(p2) - sp.rv.evaluate(p2) * l1 * l1;
    j(4, 4) = 2 * r1 * l2 * sp.lc.evaluate(p2) - 2 * r2 * l1 * sp.lc.evaluate(p1);
    const Vec5 step = j.fullPivLu().solve(f);
    if (!step.allFinite()) return std::nullopt;
    q -= step.cwiseMax(-0.25).cwiseMin(0.25);
    if (step.norm() < 1e-14 * (1 + q.norm())) {
      residual = step.norm();
      return q;
    }
  }
  return std::nullopt;
}

std::optional<GoldenNumber> recognize(double x) {
  const double s5 = std::sqrt(5.0);
  for (long d = 1; d <= 64; ++d) {
    for (long b = 0; b <= 64; ++b) {
      for (long sb : {b, -b}) {
        const double a = std::round(x * static_cast<double>(d) - static_cast<double>(sb) * s5);
        const GoldenNumber g(Rational(static_cast<long>(a), d), Rational(sb, d));
        if (std::fabs(g.to_double() - x) < 1e-10 * (1 + std::fabs(x))) return g;
        if (b == 0) break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<DecicCandidate> scan_decic_candidates() {
  const ScanPolys sp;
  std::vector<DecicCandidate> out;
  for (int k = 1; k < 40; ++k) {
    const double c = 0.1 * k;
    if (std::fabs(c - 1.0) < 0.04) continue;
    const auto crit = critical_points(sp, c);
    for (std::size_t i = 0; i < crit.size(); ++i) {
      for (std::size_t j = i + 1; j < crit.size(); ++j) {
        Eigen::Matrix<double, 5, 1> q;
        q << crit[i](0), crit[i](1), crit[j](0), crit[j](1), c;
        double residual = 0;
        const auto sol = coincidence(sp, q, residual);
        if (!sol) continue;
        const auto& s = *sol;
        const double cc = s(4);
        if (s(0) < 1e-6 || s(1) < 1e-6 || s(2) < 1e-6 || s(3) < 1e-6) continue;
        if (cc <= 0.0 || std::fabs(cc - 1.0) < 1e-6) continue;
        if (std::hypot(s(0) - s(2), s(1) - s(3)) < 1e-6) continue;
        const double l1 = sp.l.evaluate(at(s(0), s(1), cc));
        const double l2 = sp.l.evaluate(at(s(2), s(3), cc));
        if (std::fabs(l1) < 1e-8 || std::fabs(l2) < 1e-8) continue;
        const double beta = sp.r.evaluate(at(s(0), s(1), cc)) / (l1 * l1);
        if (std::fabs(beta) < 1e-9) continue;
        const auto eb = recognize(beta);
        const auto ec = recognize(cc);
        if (!eb || !ec) continue;
        const bool seen = std::any_of(out.begin(), out.end(), [&](const DecicCandidate& d) {
          return d.exact.beta == *eb && d.exact.c == *ec;
        });
        if (seen) continue;
        DecicCandidate d;
        d.exact = {*eb, *ec};
        d.beta = beta;
        d.c = cc;
        d.residual = residual;
        d.radius_sq[0] = std::min(s(0) + s(1), s(2) + s(3));
        d.radius_sq[1] = std::max(s(0) + s(1), s(2) + s(3));
        out.push_back(d);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const DecicCandidate& a, const DecicCandidate& b) {
    return a.c != b.c ? a.c < b.c : a.beta < b.beta;
  });
  return out;
}

std::vector<std::vector<GoldenNumber>> decic_scan_grid(const std::vector<DecicCandidate>& candidates,
                                                       const Rational& step) {
  std::vector<std::vector<GoldenNumber>> grid;
  const GoldenNumber s(step);
  for (const auto& d : candidates) {
    grid.push_back({d.exact.beta - s, d.exact.c});
    grid.push_back({d.exact.beta, d.exact.c});
    grid.push_back({d.exact.beta + s, d.exact.c});
    grid.push_back({d.exact.beta, d.exact.c - s});
    grid.push_back({d.exact.beta, d.exact.c + s});
  }
  return grid;
}

}  // namespace nodal
