#include "nodal/render.hpp"

#include "nodal/rootcert.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace nodal {

namespace {

constexpr double kNearSingular = 1e-6;

Eigen::Vector3d to_double(const Vec3Q& v) {
  return {v[0].get_d(), v[1].get_d(), v[2].get_d()};
}

Interval horner(const std::vector<Interval>& c, const Interval& t) {
  if (c.empty()) return Interval(0.0);
  Interval acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * t + c[i];
  return acc;
}

std::vector<Interval> derivative(const std::vector<Interval>& c) {
  std::vector<Interval> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * Interval(static_cast<double>(i)));
  return d;
}

struct RayPoly {
  std::vector<Interval> p, dp;
  std::function<UniPoly()> make_exact;
  std::optional<UniPoly> exact;
  bool used_exact = false;

  Interval range(double a, double b) const {
    const Interval T(a, b);
    const double m = 0.5 * a + 0.5 * b;
    const Interval centred = horner(p, Interval(m)) + horner(dp, T) * (T - Interval(m));
    const Interval direct = horner(p, T);
    return {std::max(centred.lo, direct.lo), std::min(centred.hi, direct.hi)};
  }
  int sign_at(double t) const { return horner(p, Interval(t)).certain_sign(); }

  // Leftmost root in [a, hi], or nullopt. Subintervals are excluded or
  // certified in interval arithmetic from the left; at the first piece too
  // small to split everything to its left is root-free, and the rest of the
  // ray is decided exactly.
  std::optional<double> first_root(double a, double b, double hi) {
    if (!range(a, b).contains_zero()) return std::nullopt;
    if (!horner(dp, Interval(a, b)).contains_zero()) {
      const int sa = sign_at(a);
      const int sb = sign_at(b);
      if (sa != 0 && sb != 0) {
        if (sa == sb) return std::nullopt;
        return refine(a, b, sa);
      }
    }
    const double m = 0.5 * a + 0.5 * b;
    if (!(a < m && m < b) || b - a <= 1e-12 * std::max(1.0, std::fabs(a))) return decide_exactly(a, hi);
    if (const auto left = first_root(a, m, hi)) return left;
    if (used_exact) return std::nullopt;
    return first_root(m, b, hi);
  }

  double refine(double a, double b, int sa) const {
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * a + 0.5 * b;
      if (!(a < m && m < b)) break;
      const int s = sign_at(m);
      if (s == 0) return m;
      if (s == sa) a = m;
      else b = m;
    }
    return 0.5 * a + 0.5 * b;
  }

  std::optional<double> decide_exactly(double a, double b) {
    used_exact = true;
    if (!exact) exact = make_exact();
    const UniPoly& e = *exact;
    if (e.is_zero()) return a;
    const Rational ra(a), rb(b);
    const int sa = sign(e(GoldenNumber(ra)));
    if (sa == 0) return a;
    if (sturm_count(e, ra, rb) == 0) return std::nullopt;
    const auto roots = isolate_roots(e, ra, rb);
    IsolatingInterval first = roots.front();
    if (!first.exact()) first = refine_root(square_free_part(e), first, Rational(std::ldexp(std::max(1.0, std::fabs(b)), -50)));
    return first.midpoint().get_d();
  }
};

}  // namespace

void Camera::validate() const {
  if (width <= 0 || height <= 0) throw std::invalid_argument("camera: image size must be positive");
  if (eye == look_at) throw std::invalid_argument("camera: eye equals look-at point");
  if (fov_degrees <= 0 || fov_degrees >= 180) throw std::invalid_argument("camera: field of view must be in (0, 180)");
  const Vec3Q v{look_at[0] - eye[0], look_at[1] - eye[1], look_at[2] - eye[2]};
  const Vec3Q c{v[1] * up[2] - v[2] * up[1], v[2] * up[0] - v[0] * up[2], v[0] * up[1] - v[1] * up[0]};
  if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw std::invalid_argument("camera: up vector parallel to view direction");
}

std::array<std::uint8_t, 3> Image::pixel(int x, int y) const {
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
  return {rgb[i], rgb[i + 1], rgb[i + 2]};
}

std::string Image::ppm() const {
  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
  return out;
}

void Image::write_ppm(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  const std::string data = ppm();
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw std::runtime_error("failed writing " + path);
}

RaySurface::RaySurface(const MultiPoly& F) : F_(F) {
  const MultiPoly affine = specialize(F, Var::w, GoldenNumber(1));
  degree_ = affine.degree();
  for (const auto& [e, c] : affine.terms()) terms_.push_back({{e[0], e[1], e[2]}, to_interval(c)});
  f_ = CompiledPoly(affine);
  grad_ = {CompiledPoly(nodal::derivative(affine, Var::x)), CompiledPoly(nodal::derivative(affine, Var::y)),
           CompiledPoly(nodal::derivative(affine, Var::z))};
}

std::vector<Interval> RaySurface::ray_coefficients(const Eigen::Vector3d& base, const Eigen::Vector3d& dir) const {
  const int n = degree_ + 1;
  // powers[i][k] holds the coefficients of (base_i + s dir_i)^k.
  std::array<std::vector<std::vector<Interval>>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    powers[i].resize(n);
    powers[i][0] = {Interval(1.0)};
    const Interval b(base[i]), d(dir[i]);
    for (int k = 1; k < n; ++k) {
      const auto& prev = powers[i][k - 1];
      auto& cur = powers[i][k];
      cur.assign(k + 1, Interval(0.0));
      for (int j = 0; j < k; ++j) {
        cur[j] += prev[j] * b;
        cur[j + 1] += prev[j] * d;
      }
    }
  }
  std::vector<Interval> c(n, Interval(0.0));
  std::vector<Interval> xy;
  for (const auto& t : terms_) {
    const auto& X = powers[0][t.e[0]];
    const auto& Y = powers[1][t.e[1]];
    const auto& Z = powers[2][t.e[2]];
    xy.assign(X.size() + Y.size() - 1, Interval(0.0));
    for (std::size_t a = 0; a < X.size(); ++a)
      for (std::size_t b = 0; b < Y.size(); ++b) xy[a + b] += X[a] * Y[b];
    for (std::size_t a = 0; a < xy.size(); ++a) {
      const Interval ca = t.c * xy[a];
      for (std::size_t b = 0; b < Z.size(); ++b) c[a + b] += ca * Z[b];
    }
  }
  return c;
}

UniPoly RaySurface::exact_ray_polynomial(const Eigen::Vector3d& base, const Eigen::Vector3d& dir) const {
  const auto q = [](double v) { return GoldenNumber(Rational(v)); };
  return restrict_to_line(F_, {q(base[0]), q(base[1]), q(base[2]), GoldenNumber(1)},
                          {q(dir[0]), q(dir[1]), q(dir[2]), GoldenNumber(0)});
}

double RaySurface::value(const Eigen::Vector3d& p) const { return f_.evaluate(Point4<double>{p[0], p[1], p[2], 1.0}); }

Interval RaySurface::value_enclosure(const Eigen::Vector3d& p) const {
  return f_.evaluate(Point4<Interval>{Interval(p[0]), Interval(p[1]), Interval(p[2]), Interval(1.0)});
}

Eigen::Vector3d RaySurface::gradient(const Eigen::Vector3d& p) const {
  const Point4<double> q{p[0], p[1], p[2], 1.0};
  return {grad_[0].evaluate(q), grad_[1].evaluate(q), grad_[2].evaluate(q)};
}

std::optional<RayHit> RaySurface::first_hit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, double t_lo,
                                            double t_hi) const {
  if (dir.isZero()) throw std::invalid_argument("first_hit: zero direction");
  if (!(t_lo <= t_hi)) return std::nullopt;
  const double t_mid = 0.5 * t_lo + 0.5 * t_hi;
  const Eigen::Vector3d base = origin + t_mid * dir;
  RayPoly rp;
  rp.p = ray_coefficients(base, dir);
  rp.dp = derivative(rp.p);
  rp.make_exact = [&] { return exact_ray_polynomial(base, dir); };
  const double s_lo = t_lo - t_mid;
  const double s_hi = t_hi - t_mid;
  const auto s = rp.first_root(s_lo, s_hi, s_hi);
  if (!s) return std::nullopt;
  RayHit hit;
  hit.t = t_mid + *s;
  hit.exact_fallback = rp.used_exact;
  hit.point = base + *s * dir;
  const Eigen::Vector3d g = gradient(hit.point);
  const double n = g.norm();
  hit.near_singular = !(n >= kNearSingular);
  hit.normal = hit.near_singular ? Eigen::Vector3d::Zero() : Eigen::Vector3d(g / n);
  return hit;
}

std::optional<RayHit> first_hit(const MultiPoly& F, const Vec3Q& origin, const Eigen::Vector3d& dir, double t_lo,
                                double t_hi) {
  return RaySurface(F).first_hit(to_double(origin), dir, t_lo, t_hi);
}

std::optional<std::pair<double, double>> clip_to_ball(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                                      double radius) {
  const double a = dir.squaredNorm();
  const double b = origin.dot(dir);
  const double c = origin.squaredNorm() - radius * radius;
  const double disc = b * b - a * c;
  if (disc < 0) return std::nullopt;
  const double s = std::sqrt(disc);
  const double t0 = std::max(0.0, (-b - s) / a);
  const double t1 = (-b + s) / a;
  if (t1 < t0) return std::nullopt;
  return std::make_pair(t0, t1);
}

namespace {

struct Frame {
  Eigen::Vector3d forward, right, up;
  double scale;
};

Frame camera_frame(const Camera& camera) {
  camera.validate();
  Frame fr;
  fr.forward = (to_double(camera.look_at) - to_double(camera.eye)).normalized();
  fr.right = fr.forward.cross(to_double(camera.up)).normalized();
  fr.up = fr.right.cross(fr.forward);
  fr.scale = std::tan(0.5 * camera.fov_degrees.get_d() * std::numbers::pi / 180.0);
  return fr;
}

Eigen::Vector3d direction(const Frame& fr, const Camera& camera, int px, int py) {
  const double h = camera.height;
  const double sx = (2.0 * px + 1 - camera.width) / h * fr.scale;
  const double sy = (h - 2.0 * py - 1) / h * fr.scale;
  return fr.forward + sx * fr.right + sy * fr.up;
}

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); }

}  // namespace

Eigen::Vector3d pixel_direction(const Camera& camera, int px, int py) {
  return direction(camera_frame(camera), camera, px, py);
}

Image render(const MultiPoly& F, const Camera& camera, const RenderOptions& options) {
  if (!(options.clip_radius > 0)) throw std::invalid_argument("render: clip radius must be positive");
  const Frame fr = camera_frame(camera);
  const RaySurface surface(F);
  const Eigen::Vector3d eye = to_double(camera.eye);
  const Lighting& L = options.lighting;
  const Eigen::Vector3d light =
      (L.key[0] * fr.right + L.key[1] * fr.up - L.key[2] * fr.forward).normalized();

  Image img;
  img.width = camera.width;
  img.height = camera.height;
  img.rgb.assign(3 * static_cast<std::size_t>(img.width) * img.height, 0);

  const auto shade_row = [&](int py) {
    for (int px = 0; px < img.width; ++px) {
      std::uint8_t* out = &img.rgb[3 * (static_cast<std::size_t>(py) * img.width + px)];
      std::copy(L.background.begin(), L.background.end(), out);
      const Eigen::Vector3d d = direction(fr, camera, px, py);
      const auto range = clip_to_ball(eye, d, options.clip_radius);
      if (!range) continue;
      const auto hit = surface.first_hit(eye, d, range->first, range->second);
      if (!hit) continue;
      const Eigen::Vector3d view = -d.normalized();
      Eigen::Vector3d n = hit->near_singular ? view : hit->normal;
      if (n.dot(view) < 0) n = -n;
      const double diff = std::max(0.0, n.dot(light));
      const double spec = diff > 0 ? std::pow(std::max(0.0, n.dot((light + view).normalized())), L.shininess) : 0.0;
      for (int k = 0; k < 3; ++k) out[k] = to_byte(L.material[k] * (L.ambient + L.diffuse * diff) + L.specular * spec);
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(img.height)));
  if (threads == 1) {
    for (int py = 0; py < img.height; ++py) shade_row(py);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) {
      pool.emplace_back([&, k] {
        for (int py = static_cast<int>(k); py < img.height; py += static_cast<int>(threads)) shade_row(py);
      });
    }
    for (auto& t : pool) t.join();
  }
  return img;
}

std::optional<double> normal_check(const RaySurface& surface, const RayHit& hit, double step) {
  if (hit.near_singular) return std::nullopt;
  Eigen::Vector3d fd;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d a = hit.point, b = hit.point;
    a[i] += step;
    b[i] -= step;
    fd[i] = (surface.value(a) - surface.value(b)) / (2 * step);
  }
  if (!(fd.norm() > 0)) return std::nullopt;
  const Eigen::Vector3d n = fd.normalized();
  return std::atan2(hit.normal.cross(n).norm(), hit.normal.dot(n));
}

Camera default_camera(const std::string& surface, int width, int height) {
  Camera c;
  c.width = width;
  c.height = height;
  c.look_at = {Rational(0), Rational(0), Rational(0)};
  c.up = {Rational(0), Rational(0), Rational(1)};
  if (surface == "barth-decic") {
    c.eye = {Rational(13, 2), Rational(9, 2), Rational(7, 2)};
    c.fov_degrees = 45;
  } else if (surface == "barth-sextic") {
    c.eye = {Rational(6), Rational(5), Rational(4)};
    c.fov_degrees = 45;
  } else {
    c.eye = {Rational(0), Rational(-5), Rational(0)};
    c.fov_degrees = 45;
  }
  return c;
}

}  // namespace nodal
