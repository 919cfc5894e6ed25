#include "nodal/rootcert.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nodal {

// ---------------------------------------------------------------------------
// Univariate

namespace {

int sign_at(const UniPoly& p, const Rational& x) { return sign(p(GoldenNumber(x))); }

int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int count = 0;
  int last = 0;
  const GoldenNumber gx(x);
  for (const auto& p : chain) {
    const int s = sign(p(gx));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

UniPoly deflate(UniPoly p, const Rational& root) {
  const UniPoly lin({GoldenNumber(-root), GoldenNumber(1)});
  while (!p.is_zero() && p.degree() > 0 && p(GoldenNumber(root)).is_zero()) p = divmod(p, lin).first;
  return p;
}

// Sturm count of roots in (lo, hi] for a polynomial that vanishes at neither endpoint.
int count_open(const std::vector<UniPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

Rational upper_bound_abs(const GoldenNumber& x) {
  const DyadicInterval d = enclose(abs(x), 8);
  return d.hi;
}

Rational lower_bound_abs(const GoldenNumber& x) {
  const DyadicInterval d = enclose(abs(x), 8);
  if (sgn(d.lo) > 0) return d.lo;
  return enclose(abs(x), 200).lo;
}

}  // namespace

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  for (;;) {
    const UniPoly& a = chain[chain.size() - 2];
    const UniPoly& b = chain.back();
    UniPoly r = -divmod(a, b).second;
    if (r.is_zero()) break;
    // A positive scale keeps every sign and slows coefficient growth.
    r *= abs(r.leading()).inverse();
    chain.push_back(std::move(r));
  }
  return chain;
}

int sturm_count(const UniPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw ArithmeticError("sturm_count: zero polynomial");
  if (!(lo < hi)) return 0;
  const bool hi_root = p(GoldenNumber(hi)).is_zero();
  UniPoly q = deflate(deflate(p, lo), hi);
  if (q.degree() <= 0) return hi_root ? 1 : 0;
  return count_open(sturm_sequence(q), lo, hi) + (hi_root ? 1 : 0);
}

Rational root_bound(const UniPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, upper_bound_abs(p.coeff(i)));
  Rational b = 1 + m / lower_bound_abs(p.leading());
  b.canonicalize();
  return b;
}

std::vector<IsolatingInterval> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw ArithmeticError("isolate_roots: zero polynomial");
  std::vector<IsolatingInterval> out;
  if (p.degree() <= 0 || hi < lo) return out;
  const UniPoly q = square_free_part(p);
  const UniPoly repeated = gcd(p, p.derivative());
  const auto is_simple = [&](const Rational& a, const Rational& b) {
    if (repeated.degree() <= 0) return true;
    if (a == b) return !repeated(GoldenNumber(a)).is_zero();
    return sturm_count(repeated, a, b) == 0;
  };
  if (sign_at(q, lo) == 0) out.push_back({lo, lo, is_simple(lo, lo)});
  // V(a) - V(b) counts the roots of the square-free q in (a, b], also when a
  // or b is a root, since a vanishing q is skipped like its right-hand limit.
  const std::vector<UniPoly> chain = sturm_sequence(q);
  const auto count = [&](const Rational& a, const Rational& b) { return count_open(chain, a, b); };

  // Explicit stack of (a, b]; b may be a root.
  struct Span {
    Rational a, b;
  };
  std::vector<Span> stack{{lo, hi}};
  std::vector<IsolatingInterval> found;
  while (!stack.empty()) {
    Span s = stack.back();
    stack.pop_back();
    if (!(s.a < s.b)) continue;
    const int n = count(s.a, s.b);
    if (n == 0) continue;
    const bool b_root = sign_at(q, s.b) == 0;
    if (n == 1) {
      if (b_root) found.push_back({s.b, s.b, is_simple(s.b, s.b)});
      else found.push_back({s.a, s.b, is_simple(s.a, s.b)});
      continue;
    }
    Rational mid = (s.a + s.b) / 2;
    mid.canonicalize();
    if (sign_at(q, mid) == 0) {
      found.push_back({mid, mid, is_simple(mid, mid)});
      // Nudge so both halves start at a non-root; q is square-free so roots are isolated.
      Rational eps = (s.b - s.a) / 4;
      for (;;) {
        eps /= 2;
        const Rational left = mid - eps;
        const Rational right = mid + eps;
        if (sign_at(q, left) != 0 && sign_at(q, right) != 0 && count(left, right) == 1) {
          stack.push_back({right, s.b});
          stack.push_back({s.a, left});
          // (left, mid) and (mid, right] contain no other roots.
          break;
        }
      }
      continue;
    }
    stack.push_back({mid, s.b});
    stack.push_back({s.a, mid});
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  out.insert(out.end(), found.begin(), found.end());
  return out;
}

IsolatingInterval refine_root(const UniPoly& square_free, IsolatingInterval iv, const Rational& width) {
  while (!iv.exact() && iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    mid.canonicalize();
    const int sm = sign_at(square_free, mid);
    if (sm == 0) {
      iv.lo = iv.hi = mid;
      break;
    }
    const int sh = sign_at(square_free, iv.hi);
    if (sh == 0) {
      iv.lo = iv.hi;
      break;
    }
    if (sm != sh) iv.lo = mid;
    else iv.hi = mid;
  }
  return iv;
}

// ---------------------------------------------------------------------------
// Boxes

Box3 make_box(const Vec3d& center, const Vec3d& radius) {
  Box3 b;
  for (int i = 0; i < 3; ++i) {
    b(i) = Interval(center(i)) - Interval(-radius(i), radius(i));
  }
  return b;
}

Vec3d box_center(const Box3& b) {
  return {b(0).mid(), b(1).mid(), b(2).mid()};
}

namespace {

// a - b rounded toward +inf; exact results are left untouched (TwoSum residual).
double sub_up(double a, double b) {
  const double s = a - b;
  const double bv = s - a;
  const double av = s - bv;
  const double err = (a - av) + (-b - bv);
  return err > 0.0 ? std::nextafter(s, std::numeric_limits<double>::infinity()) : s;
}

}  // namespace

Vec3d box_radius(const Box3& b) {
  const Vec3d c = box_center(b);
  Vec3d r;
  for (int i = 0; i < 3; ++i) r(i) = std::max(sub_up(c(i), b(i).lo), sub_up(b(i).hi, c(i)));
  return r;
}

double box_max_radius(const Box3& b) { return box_radius(b).maxCoeff(); }

Box3 intersect_box(const Box3& a, const Box3& b) {
  Box3 out;
  for (int i = 0; i < 3; ++i) out(i) = intersect(a(i), b(i));
  return out;
}

// ---------------------------------------------------------------------------
// TaylorPoly3

TaylorPoly3::TaylorPoly3(const MultiPoly& p) {
  if (p.degree_in(Var::w) > 0) throw std::invalid_argument("TaylorPoly3: polynomial contains w");
  degree_ = p.degree();
  stride_ = static_cast<std::size_t>(degree_) + 1;
  c_.assign(stride_ * stride_ * stride_, Interval(0.0));
  for (const auto& [e, coeff] : p.terms()) c_[index(e[0], e[1], e[2])] = to_interval(coeff);
}

void TaylorPoly3::shift_axis(int axis, double delta) {
  if (delta == 0.0) return;
  shift_to(axis, center_(axis) + delta);
}

void TaylorPoly3::recenter(const Vec3d& new_center) {
  for (int a = 0; a < 3; ++a) {
    if (new_center(a) != center_(a)) shift_to(a, new_center(a));
  }
}

void TaylorPoly3::shift_to(int axis, double target) {
  // Enclosure of the exact offset between the stored double centers.
  const Interval d = Interval(target) - Interval(center_(axis));
  const int n = degree_;
  std::vector<Interval> a(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; p + q <= n; ++q) {
      const int len = n - p - q;  // highest power along the axis in this fiber
      if (len == 0) continue;
      const auto at = [&](int t) -> Interval& {
        switch (axis) {
          case 0: return c_[index(t, p, q)];
          case 1: return c_[index(p, t, q)];
          default: return c_[index(p, q, t)];
        }
      };
      bool any = false;
      for (int t = 1; t <= len && !any; ++t) any = at(t).lo != 0.0 || at(t).hi != 0.0;
      if (!any) continue;
      for (int t = 0; t <= len; ++t) a[static_cast<std::size_t>(t)] = at(t);
      // Ruffini-Horner shift: coefficients of p(t + d).
      for (int i = 0; i < len; ++i) {
        for (int j = len - 1; j >= i; --j) a[static_cast<std::size_t>(j)] += d * a[static_cast<std::size_t>(j) + 1];
      }
      for (int t = 0; t <= len; ++t) at(t) = a[static_cast<std::size_t>(t)];
    }
  }
  center_(axis) = target;
}

Interval TaylorPoly3::generic_range(const std::array<int, 3>& deriv, const Vec3d& r) const {
  const int n = degree_;
  // Upper bounds of r_a^k.
  std::array<std::vector<double>, 3> pw;
  for (int a = 0; a < 3; ++a) {
    auto& v = pw[static_cast<std::size_t>(a)];
    v.resize(static_cast<std::size_t>(n) + 1);
    v[0] = 1.0;
    for (int k = 1; k <= n; ++k) v[static_cast<std::size_t>(k)] = detail::up(v[static_cast<std::size_t>(k) - 1] * r(a));
  }
  const auto falling = [](int m, int k) {
    double f = 1.0;
    for (int i = 0; i < k; ++i) f *= static_cast<double>(m - i);
    return f;
  };
  Interval acc(0.0);
  double spread = 0.0;  // accumulated symmetric part, rounded up
  for (int i = deriv[0]; i <= n; ++i) {
    for (int j = deriv[1]; i + j <= n; ++j) {
      for (int k = deriv[2]; i + j + k <= n; ++k) {
        const Interval& c = c_[index(i, j, k)];
        if (c.lo == 0.0 && c.hi == 0.0) continue;
        const int bi = i - deriv[0];
        const int bj = j - deriv[1];
        const int bk = k - deriv[2];
        const double f = falling(i, deriv[0]) * falling(j, deriv[1]) * falling(k, deriv[2]);
        const Interval cf = c * Interval(f);
        if (bi == 0 && bj == 0 && bk == 0) {
          acc += cf;
          continue;
        }
        const double m = detail::up(detail::up(pw[0][static_cast<std::size_t>(bi)] * pw[1][static_cast<std::size_t>(bj)]) *
                                    pw[2][static_cast<std::size_t>(bk)]);
        if (bi % 2 == 0 && bj % 2 == 0 && bk % 2 == 0) {
          acc += cf * Interval(0.0, m);
        } else {
          spread = detail::up(spread + detail::up(cf.mag() * m));
        }
      }
    }
  }
  return acc + Interval(-spread, spread);
}

Interval TaylorPoly3::range(const Vec3d& r) const { return generic_range({0, 0, 0}, r); }

Interval TaylorPoly3::derivative_range(int axis, const Vec3d& r) const {
  std::array<int, 3> d{0, 0, 0};
  d[static_cast<std::size_t>(axis)] = 1;
  return generic_range(d, r);
}

Interval TaylorPoly3::second_derivative_range(int a, int b, const Vec3d& r) const {
  std::array<int, 3> d{0, 0, 0};
  ++d[static_cast<std::size_t>(a)];
  ++d[static_cast<std::size_t>(b)];
  return generic_range(d, r);
}

Vec3d TaylorPoly3::gradient_at_center_mid() const {
  if (degree_ < 1) return Vec3d::Zero();
  return {coeff(1, 0, 0).mid(), coeff(0, 1, 0).mid(), coeff(0, 0, 1).mid()};
}

// ---------------------------------------------------------------------------
// Krawczyk

namespace {

struct Expanded {
  Vec3d center;
  Vec3d radius;
  std::vector<TaylorPoly3> polys;  // equations first, then side conditions
};

// Value and gradient at center + h using coefficient midpoints.
void eval_point(const TaylorPoly3& p, const Vec3d& h, double& value, Vec3d& grad) {
  const int n = p.degree();
  std::array<std::vector<double>, 3> pw;
  for (int a = 0; a < 3; ++a) {
    auto& v = pw[static_cast<std::size_t>(a)];
    v.resize(static_cast<std::size_t>(n) + 2);
    v[0] = 1.0;
    for (int k = 1; k <= n; ++k) v[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k) - 1] * h(a);
  }
  value = 0.0;
  grad.setZero();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      for (int k = 0; i + j + k <= n; ++k) {
        const double c = p.coeff(i, j, k).mid();
        if (c == 0.0) continue;
        const double xi = pw[0][static_cast<std::size_t>(i)];
        const double yj = pw[1][static_cast<std::size_t>(j)];
        const double zk = pw[2][static_cast<std::size_t>(k)];
        value += c * xi * yj * zk;
        if (i > 0) grad(0) += c * i * pw[0][static_cast<std::size_t>(i) - 1] * yj * zk;
        if (j > 0) grad(1) += c * j * xi * pw[1][static_cast<std::size_t>(j) - 1] * zk;
        if (k > 0) grad(2) += c * k * xi * yj * pw[2][static_cast<std::size_t>(k) - 1];
      }
    }
  }
}

enum class KrawczykOutcome { inside, disjoint, undecided };

struct KrawczykStep {
  KrawczykOutcome outcome = KrawczykOutcome::undecided;
  Box3 image_offset;  // K - center
};

bool box_subset(const Box3& a, const Box3& b) {
  for (int i = 0; i < 3; ++i) {
    if (!a(i).subset_of(b(i))) return false;
  }
  return true;
}

bool box_intersects(const Box3& a, const Box3& b) {
  for (int i = 0; i < 3; ++i) {
    if (!a(i).intersects(b(i))) return false;
  }
  return true;
}

KrawczykStep krawczyk(const std::vector<TaylorPoly3>& eq, const Vec3d& r) {
  KrawczykStep step;
  Mat3I jac;
  Eigen::Matrix<Interval, 3, 1> g;
  Mat3d jmid;
  for (int i = 0; i < 3; ++i) {
    g(i) = eq[static_cast<std::size_t>(i)].value_at_center();
    for (int j = 0; j < 3; ++j) {
      jac(i, j) = eq[static_cast<std::size_t>(i)].derivative_range(j, r);
      jmid(i, j) = jac(i, j).mid();
    }
  }
  Eigen::FullPivLU<Mat3d> lu(jmid);
  if (!lu.isInvertible() || !jmid.allFinite()) return step;
  const Mat3d y = lu.inverse();
  if (!y.allFinite()) return step;

  for (int i = 0; i < 3; ++i) {
    Interval acc(0.0);
    for (int k = 0; k < 3; ++k) acc -= Interval(y(i, k)) * g(k);
    for (int j = 0; j < 3; ++j) {
      Interval m(i == j ? 1.0 : 0.0);
      for (int k = 0; k < 3; ++k) m -= Interval(y(i, k)) * jac(k, j);
      acc += m * Interval(-r(j), r(j));
    }
    step.image_offset(i) = acc;
  }
  bool inside = true;
  for (int i = 0; i < 3; ++i) {
    const Interval& k = step.image_offset(i);
    if (!std::isfinite(k.lo) || !std::isfinite(k.hi)) return step;
    if (k.hi < -r(i) || k.lo > r(i)) {
      step.outcome = KrawczykOutcome::disjoint;
      return step;
    }
    if (!(k.lo > -r(i) && k.hi < r(i))) inside = false;
  }
  step.outcome = inside ? KrawczykOutcome::inside : KrawczykOutcome::undecided;
  return step;
}

Box3 offset_box(const Vec3d& center, const Box3& offset) {
  Box3 b;
  for (int i = 0; i < 3; ++i) b(i) = Interval(center(i)) + offset(i);
  return b;
}

// Damped Newton from the box center; returns the offset of the converged point.
std::optional<Vec3d> newton_guess(const std::vector<TaylorPoly3>& eq, const Vec3d& r) {
  Vec3d h = Vec3d::Zero();
  for (int iter = 0; iter < 12; ++iter) {
    Vec3d g;
    Mat3d j;
    for (int i = 0; i < 3; ++i) {
      double v;
      Vec3d grad;
      eval_point(eq[static_cast<std::size_t>(i)], h, v, grad);
      g(i) = v;
      j.row(i) = grad.transpose();
    }
    Eigen::FullPivLU<Mat3d> lu(j);
    if (!lu.isInvertible()) return std::nullopt;
    const Vec3d step = lu.solve(g);
    if (!step.allFinite()) return std::nullopt;
    h -= step;
    if ((h.array().abs() > 2.0 * r.array()).any()) return std::nullopt;
    if (step.norm() <= 1e-15 * (1.0 + h.norm()) + 1e-300) return h;
  }
  return h;
}

// Given a certified expansion, shrink to target radius and evaluate side conditions.
CertifiedBox finish_certified(Expanded ex, std::size_t n_eq, const KrawczykStep& first, double target_radius) {
  CertifiedBox out;
  out.uniqueness = make_box(ex.center, ex.radius);
  out.krawczyk_image = offset_box(ex.center, first.image_offset);
  Box3 current = intersect_box(out.krawczyk_image, out.uniqueness);
  // Epsilon inflation around a Newton point; the small box must stay inside
  // the uniqueness region so it holds the same root.
  if (box_max_radius(current) > target_radius) {
    const Vec3d c0 = box_center(current);
    for (auto& p : ex.polys) p.recenter(c0);
    std::vector<TaylorPoly3> eqs(ex.polys.begin(), ex.polys.begin() + static_cast<std::ptrdiff_t>(n_eq));
    if (const auto h = newton_guess(eqs, box_radius(current))) {
      const Vec3d x = c0 + *h;
      for (auto& p : eqs) p.recenter(x);
      const double limit = box_max_radius(current);
      for (double rad = target_radius / 4; rad < limit; rad *= 16) {
        const Vec3d r = Vec3d::Constant(rad);
        const KrawczykStep s = krawczyk(eqs, r);
        if (s.outcome != KrawczykOutcome::inside) continue;
        const Box3 tight = intersect_box(offset_box(x, s.image_offset), make_box(x, r));
        if (box_subset(make_box(x, r), out.uniqueness)) current = tight;
        break;
      }
    }
  }
  for (int iter = 0; iter < 80; ++iter) {
    const Vec3d c = box_center(current);
    const Vec3d r = box_radius(current);
    if (r.maxCoeff() <= target_radius) break;
    for (auto& p : ex.polys) p.recenter(c);
    std::vector<TaylorPoly3> eqs(ex.polys.begin(), ex.polys.begin() + static_cast<std::ptrdiff_t>(n_eq));
    const KrawczykStep s = krawczyk(eqs, r);
    if (s.outcome == KrawczykOutcome::disjoint) break;  // cannot happen for a certified root
    const Box3 next = intersect_box(offset_box(c, s.image_offset), current);
    bool shrank = false;
    for (int i = 0; i < 3; ++i) shrank = shrank || next(i).width() < 0.9 * current(i).width();
    current = next;
    if (!shrank) break;
  }
  out.root = current;
  const Vec3d c = box_center(current);
  const Vec3d r = box_radius(current);
  for (std::size_t i = n_eq; i < ex.polys.size(); ++i) {
    ex.polys[i].recenter(c);
    out.side_values.push_back(ex.polys[i].range(r));
  }
  return out;
}


std::vector<TaylorPoly3> expand_system(const SquareSystem& system) {
  std::vector<TaylorPoly3> polys;
  for (const auto& e : system.equations) polys.emplace_back(e);
  for (const auto& s : system.side_conditions) polys.emplace_back(s);
  return polys;
}

bool excluded(const std::vector<TaylorPoly3>& polys, const Vec3d& r) {
  return std::any_of(polys.begin(), polys.end(), [&](const TaylorPoly3& p) { return !p.range(r).contains_zero(); });
}

}  // namespace

CertifyResult newton_certify(const SquareSystem& system, const Box3& box, double target_radius) {
  Expanded ex{box_center(box), box_radius(box), expand_system(system)};
  for (auto& p : ex.polys) p.recenter(ex.center);
  if (excluded(ex.polys, ex.radius)) return {CertifyStatus::rejected, std::nullopt};
  std::vector<TaylorPoly3> eqs(ex.polys.begin(), ex.polys.begin() + 3);
  const KrawczykStep s = krawczyk(eqs, ex.radius);
  if (s.outcome == KrawczykOutcome::disjoint) return {CertifyStatus::rejected, std::nullopt};
  if (s.outcome == KrawczykOutcome::undecided) return {CertifyStatus::unknown, std::nullopt};
  // The root lies in the Krawczyk image; it must also be inside the caller's box.
  if (!box_subset(offset_box(ex.center, s.image_offset), box)) return {CertifyStatus::unknown, std::nullopt};
  CertifiedBox cb = finish_certified(std::move(ex), 3, s, target_radius);
  cb.uniqueness = box;
  for (const auto& v : cb.side_values) {
    if (!v.contains_zero()) return {CertifyStatus::rejected, std::nullopt};
  }
  return {CertifyStatus::certified, std::move(cb)};
}

// ---------------------------------------------------------------------------
// Subdivision

namespace {

struct WorkItem {
  Vec3d center;
  Vec3d radius;
  std::array<int, 3> depth{0, 0, 0};
  std::vector<TaylorPoly3> polys;
};

bool exact_sum(double a, double b) {
  const double s = a + b;
  const double bv = s - a;
  return s - bv == a && bv == b;
}

}  // namespace

SearchReport subdivide_search(const SquareSystem& system, const Box3& region, const SearchOptions& options) {
  SearchReport report;
  std::vector<CertifiedBox> raw;
  const std::size_t n_eq = 3;

  WorkItem root_item{box_center(region), box_radius(region), {0, 0, 0}, expand_system(system)};
  for (auto& p : root_item.polys) p.recenter(root_item.center);
  std::vector<WorkItem> stack;
  stack.push_back(std::move(root_item));

  const auto unresolved = [&](const WorkItem& item) {
    const Box3 b = make_box(item.center, item.radius);
    report.unresolved.push_back(b);
    if (options.on_unresolved) options.on_unresolved(b);
  };

  while (!stack.empty()) {
    WorkItem item = std::move(stack.back());
    stack.pop_back();
    if (report.boxes_visited >= options.max_boxes) {
      report.box_budget_exhausted = true;
      unresolved(item);
      continue;
    }
    ++report.boxes_visited;
    if (excluded(item.polys, item.radius)) continue;

    if (item.radius.maxCoeff() <= options.try_radius) {
      std::vector<TaylorPoly3> eqs(item.polys.begin(), item.polys.begin() + static_cast<std::ptrdiff_t>(n_eq));
      const KrawczykStep s = krawczyk(eqs, item.radius);
      if (s.outcome == KrawczykOutcome::disjoint) continue;
      if (s.outcome == KrawczykOutcome::inside) {
        CertifiedBox cb = finish_certified({item.center, item.radius, item.polys}, n_eq, s, options.target_radius);
        const bool side_ok = std::all_of(cb.side_values.begin(), cb.side_values.end(),
                                         [](const Interval& v) { return v.contains_zero(); });
        if (side_ok) raw.push_back(std::move(cb));
        continue;
      }
      // Newton from the center; certify a box around the converged point that
      // still covers this one, so every root of this box is accounted for.
      if (auto h = newton_guess(eqs, item.radius)) {
        if ((h->array().abs() <= 1.25 * item.radius.array()).all()) {
          Vec3d rho;
          for (int i = 0; i < 3; ++i) {
            const double reach = std::fabs((*h)(i)) + item.radius(i);
            rho(i) = detail::up(reach * (1.0 + 1.0 / 16));
          }
          Expanded ex{item.center + *h, rho, item.polys};
          for (auto& p : ex.polys) p.recenter(ex.center);
          std::vector<TaylorPoly3> eqs2(ex.polys.begin(), ex.polys.begin() + static_cast<std::ptrdiff_t>(n_eq));
          const KrawczykStep s2 = krawczyk(eqs2, rho);
          if (s2.outcome == KrawczykOutcome::disjoint) continue;
          if (s2.outcome == KrawczykOutcome::inside) {
            CertifiedBox cb = finish_certified(std::move(ex), n_eq, s2, options.target_radius);
            const bool side_ok = std::all_of(cb.side_values.begin(), cb.side_values.end(),
                                             [](const Interval& v) { return v.contains_zero(); });
            if (side_ok) raw.push_back(std::move(cb));
            continue;
          }
        }
      }
    }

    int axis = 0;
    for (int a = 1; a < 3; ++a) {
      if (item.radius(a) > item.radius(axis)) axis = a;
    }
    const double half = item.radius(axis) / 2;
    // One axis at the floor means the box sits on a degenerate root; splitting
    // the others would only lengthen the column of unresolved boxes.
    const bool at_floor = std::any_of(item.depth.begin(), item.depth.end(),
                                      [&](int d) { return d >= options.depth_limit; });
    if (at_floor || half == 0.0 ||
        !exact_sum(item.center(axis), half) || !exact_sum(item.center(axis), -half)) {
      unresolved(item);
      continue;
    }
    WorkItem hi = item;
    WorkItem& lo = item;
    lo.radius(axis) = half;
    hi.radius(axis) = half;
    ++lo.depth[static_cast<std::size_t>(axis)];
    ++hi.depth[static_cast<std::size_t>(axis)];
    const double c = item.center(axis);
    hi.center(axis) = c + half;
    lo.center(axis) = c - half;
    for (auto& p : hi.polys) p.recenter(hi.center);
    for (auto& p : lo.polys) p.recenter(lo.center);
    stack.push_back(std::move(hi));
    stack.push_back(std::move(lo));
  }

  // Merge duplicates: the same root certified from neighbouring boxes.
  std::sort(raw.begin(), raw.end(), [](const CertifiedBox& a, const CertifiedBox& b) {
    for (int i = 0; i < 3; ++i) {
      if (a.root(i).lo != b.root(i).lo) return a.root(i).lo < b.root(i).lo;
    }
    return false;
  });
  for (auto& cb : raw) {
    if (!box_intersects(cb.root, region)) continue;
    bool dup = false;
    for (const auto& kept : report.roots) {
      if (box_subset(cb.root, kept.uniqueness) || box_subset(kept.root, cb.uniqueness) ||
          box_intersects(cb.root, kept.root)) {
        dup = true;
        break;
      }
    }
    if (!dup) report.roots.push_back(std::move(cb));
  }
  return report;
}

}  // namespace nodal
