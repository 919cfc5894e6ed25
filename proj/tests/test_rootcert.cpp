#include "doctest.h"

#include "nodal/catalog.hpp"
#include "nodal/parse.hpp"
#include "nodal/rootcert.hpp"

#include <cmath>
#include <random>

using namespace nodal;

namespace {

UniPoly from_roots(const std::vector<GoldenNumber>& roots) {
  UniPoly p = UniPoly::constant(GoldenNumber(1));
  for (const auto& r : roots) p = p * UniPoly({-r, GoldenNumber(1)});
  return p;
}

SquareSystem circle_diagonal() {
  return {{parse_polynomial("x^2 + y^2 - 1"), parse_polynomial("x - y"), parse_polynomial("z")}, {}};
}

Box3 cube(double lo, double hi) {
  Box3 b;
  for (int i = 0; i < 3; ++i) b(i) = Interval(lo, hi);
  return b;
}

bool contains_point(const Box3& b, const Vec3d& p) {
  for (int i = 0; i < 3; ++i) {
    if (!b(i).contains(p(i))) return false;
  }
  return true;
}

// Enclosure of 1/sqrt(2): both bounds bracket it.
const double kInvSqrt2Lo = std::nextafter(M_SQRT1_2, 0.0);
const double kInvSqrt2Hi = std::nextafter(M_SQRT1_2, 1.0);

}  // namespace

TEST_CASE("Sturm counts") {
  const UniPoly t = UniPoly::t();
  const UniPoly p = t * t - UniPoly::constant(GoldenNumber(2));
  CHECK(sturm_count(p, 0, 2) == 1);
  CHECK(sturm_count(p, -2, 2) == 2);
  CHECK(sturm_count(p, Rational(3, 2), 2) == 0);
  const UniPoly q = from_roots({GoldenNumber(1), GoldenNumber(2), GoldenNumber(3)});
  CHECK(sturm_count(q, 1, 3) == 2);  // (1, 3]
  CHECK(sturm_count(q, 0, 1) == 1);
  CHECK(sturm_count(q, 3, 4) == 0);
  const UniPoly r = from_roots({GoldenNumber::sqrt5(), -tau(), tau() - GoldenNumber(1)});
  CHECK(sturm_count(r, 2, 3) == 1);
  CHECK(sturm_count(r, -2, 0) == 1);
  CHECK(sturm_count(r, Rational(62, 100), Rational(63, 100)) == 0);
  CHECK(sturm_count(r, Rational(61, 100), Rational(62, 100)) == 1);
  // Repeated roots count once.
  const UniPoly s = from_roots({GoldenNumber(1), GoldenNumber(1), GoldenNumber(-1)});
  CHECK(sturm_count(s, -5, 5) == 2);
  CHECK_THROWS_AS(sturm_count(UniPoly(), 0, 1), ArithmeticError);
}

TEST_CASE("root isolation") {
  const UniPoly t = UniPoly::t();
  const auto two = isolate_roots(t * t - UniPoly::constant(GoldenNumber(1)), -2, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].hi <= 0);
  CHECK(two[1].lo >= 0);
  for (const auto& iv : two) CHECK(iv.simple);

  const auto dbl = isolate_roots(from_roots({GoldenNumber(1), GoldenNumber(1)}), -2, 2);
  REQUIRE(dbl.size() == 1);
  CHECK(!dbl[0].simple);

  // Roots at the interval end and at a bisection midpoint are found exactly.
  const auto ends = isolate_roots(from_roots({GoldenNumber(-2), GoldenNumber(0), GoldenNumber(2)}), -2, 2);
  REQUIRE(ends.size() == 3);
  CHECK(ends[0].exact());
  CHECK(ends[0].lo == -2);
  CHECK(ends[2].hi == 2);

  const UniPoly g = from_roots({tau(), tau() - GoldenNumber(1), GoldenNumber::sqrt5()});
  const auto irr = isolate_roots(g, -3, 3);
  REQUIRE(irr.size() == 3);
  const IsolatingInterval fine = refine_root(square_free_part(g), irr[2], Rational(1, 1 << 30));
  CHECK(fine.hi - fine.lo <= Rational(1, 1 << 30));
  CHECK(round_down(fine.lo) <= std::sqrt(5.0) + 1e-12);
  CHECK(round_up(fine.hi) >= std::sqrt(5.0) - 1e-12);
  CHECK(sign(GoldenNumber(fine.lo) - GoldenNumber::sqrt5()) < 0);
  CHECK(sign(GoldenNumber(fine.hi) - GoldenNumber::sqrt5()) >= 0);
}

TEST_CASE("root bound") {
  const UniPoly g = from_roots({GoldenNumber(7), -GoldenNumber::sqrt5() * GoldenNumber(3), GoldenNumber(Rational(1, 3))});
  const Rational b = root_bound(g);
  CHECK(b >= 7);
  CHECK(sturm_count(g, -b, b) == 3);
}

TEST_CASE("isolation agrees with sampling on random rays through the sextic") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> coord(-12, 12);
  const MultiPoly f = sextic_family(alpha_sextic());
  int total_roots = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Point4<GoldenNumber> base{GoldenNumber(Rational(coord(rng), 8)), GoldenNumber(Rational(coord(rng), 8)),
                                    GoldenNumber(Rational(coord(rng), 8)), GoldenNumber(1)};
    Point4<GoldenNumber> dir{GoldenNumber(coord(rng)), GoldenNumber(coord(rng)), GoldenNumber(coord(rng)), GoldenNumber(0)};
    if (dir[0].is_zero() && dir[1].is_zero() && dir[2].is_zero()) dir[0] = GoldenNumber(1);
    const UniPoly p = restrict_to_line(f, base, dir);
    if (p.is_zero() || p.degree() <= 0) continue;
    const auto roots = isolate_roots(p, -1, 1);
    total_roots += static_cast<int>(roots.size());
    // Every sampled sign change is explained by an isolating interval.
    const int n = 400;
    const auto coeffs = p.interval_coeffs();
    const auto eval = [&](double t) {
      Interval acc(0.0);
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * Interval(t) + *it;
      return acc;
    };
    Interval prev = eval(-1.0);
    double prev_t = -1.0;
    int changes = 0;
    for (int i = 1; i <= n; ++i) {
      const double t = -1.0 + 2.0 * i / n;
      const Interval cur = eval(t);
      if (cur.certain_sign() != 0 && prev.certain_sign() != 0 && cur.certain_sign() != prev.certain_sign()) {
        ++changes;
        bool explained = false;
        for (const auto& iv : roots) {
          if (round_up(iv.hi) >= prev_t && round_down(iv.lo) <= t) explained = true;
        }
        CHECK(explained);
      }
      if (cur.certain_sign() != 0) {
        prev = cur;
        prev_t = t;
      }
    }
    CHECK(changes <= static_cast<int>(roots.size()));
    // Each isolating interval holds a root: sign change of the square-free part or an exact root.
    const UniPoly q = square_free_part(p);
    for (const auto& iv : roots) {
      if (iv.exact()) {
        CHECK(q(GoldenNumber(iv.lo)).is_zero());
      } else {
        CHECK(sign(q(GoldenNumber(iv.lo))) * sign(q(GoldenNumber(iv.hi))) <= 0);
        CHECK(sturm_count(q, iv.lo, iv.hi) == 1);
      }
    }
  }
  CHECK(total_roots > 100);
}

TEST_CASE("Taylor shift encloses exact coefficients") {
  const MultiPoly p = parse_polynomial("x^3 y - 2 tau x z^2 + y^2 z^2 - 3/7 x + sqrt5");
  TaylorPoly3 tp(p);
  const double cx = 0.375, cy = -1.25, cz = 0.8125;
  tp.recenter(Vec3d(cx, cy, cz));
  const MultiPoly X = MultiPoly::variable(Var::x);
  const MultiPoly Y = MultiPoly::variable(Var::y);
  const MultiPoly Z = MultiPoly::variable(Var::z);
  const auto dy = [](double v) { return GoldenNumber(Rational(static_cast<long>(v * 16), 16)); };
  const MultiPoly shifted = compose(p, {X + MultiPoly(dy(cx)), Y + MultiPoly(dy(cy)), Z + MultiPoly(dy(cz)),
                                        MultiPoly::variable(Var::w)});
  for (int i = 0; i <= tp.degree(); ++i) {
    for (int j = 0; i + j <= tp.degree(); ++j) {
      for (int k = 0; i + j + k <= tp.degree(); ++k) {
        const GoldenNumber exact = shifted.coeff({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                                                  static_cast<std::uint8_t>(k), 0});
        const DyadicInterval e = enclose(exact, 80);
        CHECK(tp.coeff(i, j, k).lo <= round_up(e.hi));
        CHECK(tp.coeff(i, j, k).hi >= round_down(e.lo));
      }
    }
  }
}

TEST_CASE("range enclosures contain sampled values") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const MultiPoly f = dehomogenize(sextic_family(alpha_sextic()));
  const auto grad = gradient(f);
  const CompiledPoly cf(f);
  const CompiledPoly cg(grad[0]);
  TaylorPoly3 tf(f);
  TaylorPoly3 tg(grad[0]);
  long samples = 0;
  for (int b = 0; b < 1000; ++b) {
    const Vec3d c(std::ldexp(std::round(u(rng) * 64), -6), std::ldexp(std::round(u(rng) * 64), -6),
                  std::ldexp(std::round(u(rng) * 64), -6));
    const Vec3d r = Vec3d::Constant(std::ldexp(1.0, -2 - b % 6));
    tf.recenter(c);
    tg.recenter(c);
    const Interval rf = tf.range(r);
    const Interval rg = tg.range(r);
    const Interval dfx = tf.derivative_range(0, r);
    for (int s = 0; s < 1000; ++s, ++samples) {
      const Point4<Interval> pt{Interval(c(0) + u(rng) * r(0)), Interval(c(1) + u(rng) * r(1)),
                                Interval(c(2) + u(rng) * r(2)), Interval(1.0)};
      CHECK_MESSAGE(cf.evaluate(pt).intersects(rf), "value outside range");
      CHECK_MESSAGE(cg.evaluate(pt).intersects(rg), "gradient outside range");
      CHECK_MESSAGE(cg.evaluate(pt).intersects(dfx), "derivative outside range");
    }
  }
  CHECK(samples == 1'000'000);
}

TEST_CASE("Krawczyk certifies the diagonal root of the circle") {
  const SquareSystem sys = circle_diagonal();
  const CertifyResult res = newton_certify(sys, make_box(Vec3d(0.7, 0.7, 0.0), Vec3d(0.05, 0.05, 0.05)));
  REQUIRE(res.status == CertifyStatus::certified);
  REQUIRE(res.box);
  const Box3& root = res.box->root;
  CHECK(root(0).lo <= kInvSqrt2Hi);
  CHECK(root(0).hi >= kInvSqrt2Lo);
  CHECK(root(1).lo <= kInvSqrt2Hi);
  CHECK(root(1).hi >= kInvSqrt2Lo);
  CHECK(root(2).contains(0.0));
  CHECK(box_max_radius(root) <= 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(res.box->krawczyk_image(i).interior_of(res.box->uniqueness(i)));

  CHECK(newton_certify(sys, cube(2.0, 3.0)).status == CertifyStatus::rejected);
  // A box holding both roots cannot certify uniqueness.
  CHECK(newton_certify(sys, cube(-1.0, 1.0)).status != CertifyStatus::certified);
}

TEST_CASE("rejection and certification are sound on random boxes") {
  const SquareSystem sys = circle_diagonal();
  const Vec3d roots[2] = {Vec3d(M_SQRT1_2, M_SQRT1_2, 0.0), Vec3d(-M_SQRT1_2, -M_SQRT1_2, 0.0)};
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::uniform_real_distribution<double> rad(1e-3, 0.5);
  int certified = 0, rejected = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const Vec3d c(u(rng), u(rng), u(rng) * 0.2);
    const Vec3d r(rad(rng), rad(rng), rad(rng));
    const Box3 b = make_box(c, r);
    // A box is "clearly containing" a root when the root sits well inside it.
    int inside = 0, near = 0;
    for (const auto& z : roots) {
      bool in = true, nr = true;
      for (int i = 0; i < 3; ++i) {
        in = in && z(i) > b(i).lo + 1e-9 && z(i) < b(i).hi - 1e-9;
        nr = nr && z(i) > b(i).lo - 1e-9 && z(i) < b(i).hi + 1e-9;
      }
      inside += in;
      near += nr;
    }
    const CertifyResult res = newton_certify(sys, b);
    if (res.status == CertifyStatus::rejected) {
      ++rejected;
      CHECK(inside == 0);
    } else if (res.status == CertifyStatus::certified) {
      ++certified;
      CHECK(near == 1);
      CHECK(inside <= 1);
    }
  }
  CHECK(certified > 50);
  CHECK(rejected > 1000);
}

TEST_CASE("subdivision finds both circle roots") {
  const SearchReport rep = subdivide_search(circle_diagonal(), cube(-2.0, 2.0));
  CHECK(rep.complete());
  REQUIRE(rep.roots.size() == 2);
  CHECK(rep.roots[0].root(0).hi < 0.0);
  CHECK(rep.roots[1].root(0).lo > 0.0);
  CHECK(rep.roots[1].root(0).contains(M_SQRT1_2));
}

TEST_CASE("subdivision with roots on split lines and side conditions") {
  SquareSystem grid{{parse_polynomial("x^3 - x"), parse_polynomial("y^2 - 1/4"), parse_polynomial("z^2 - z/2")}, {}};
  const SearchReport all = subdivide_search(grid, cube(-2.0, 2.0));
  CHECK(all.complete());
  CHECK(all.roots.size() == 12);
  for (const auto& cb : all.roots) {
    int hits = 0;
    for (double x : {-1.0, 0.0, 1.0})
      for (double y : {-0.5, 0.5})
        for (double z : {0.0, 0.5}) hits += contains_point(cb.root, Vec3d(x, y, z));
    CHECK(hits == 1);
  }
  grid.side_conditions.push_back(parse_polynomial("x - 2y"));
  const SearchReport filtered = subdivide_search(grid, cube(-2.0, 2.0));
  CHECK(filtered.complete());
  CHECK(filtered.roots.size() == 4);

  // Roots exactly on the region boundary are kept.
  const SearchReport edge = subdivide_search(grid, cube(-1.0, 1.0));
  CHECK(edge.roots.size() == 4);
}

TEST_CASE("undecided boxes are reported, not dropped") {
  // A double root cannot be certified; the search must say so.
  SquareSystem sys{{parse_polynomial("(x - 1/3)^2"), parse_polynomial("y"), parse_polynomial("z")}, {}};
  SearchOptions opts;
  opts.depth_limit = 12;
  int callbacks = 0;
  opts.on_unresolved = [&](const Box3&) { ++callbacks; };
  const SearchReport rep = subdivide_search(sys, cube(-1.0, 1.0), opts);
  CHECK(!rep.complete());
  CHECK(!rep.unresolved.empty());
  CHECK(callbacks == static_cast<int>(rep.unresolved.size()));
  bool covered = false;
  for (const auto& b : rep.unresolved) covered = covered || contains_point(b, Vec3d(1.0 / 3, 0, 0));
  CHECK(covered);

  SearchOptions tiny;
  tiny.max_boxes = 3;
  const SearchReport cut = subdivide_search(circle_diagonal(), cube(-2.0, 2.0), tiny);
  CHECK(cut.box_budget_exhausted);
  CHECK(!cut.complete());
}

TEST_CASE("bisecting a certified box recertifies the same root") {
  const SquareSystem sys = circle_diagonal();
  const Box3 start = make_box(Vec3d(0.7, 0.7, 0.015625), Vec3d(0.0625, 0.0625, 0.0625));
  const CertifyResult first = newton_certify(sys, start);
  REQUIRE(first.status == CertifyStatus::certified);
  for (int axis = 0; axis < 3; ++axis) {
    const double c = box_center(start)(axis);
    Box3 lo = start, hi = start;
    lo(axis) = Interval(start(axis).lo, c);
    hi(axis) = Interval(c, start(axis).hi);
    int found = 0;
    for (const Box3& half : {lo, hi}) {
      const CertifyResult r = newton_certify(sys, half);
      if (r.status == CertifyStatus::certified) {
        ++found;
        CHECK(r.box->root(0).intersects(first.box->root(0)));
        CHECK(r.box->root(1).intersects(first.box->root(1)));
        CHECK(r.box->root(2).intersects(first.box->root(2)));
      }
    }
    CHECK(found >= 1);
  }
}
