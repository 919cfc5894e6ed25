#pragma once

// Ray casting of real zero sets F(x, y, z, 1) = 0 inside a clipping ball.

#include "nodal/multipoly.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nodal {

using Vec3Q = std::array<Rational, 3>;

struct Camera {
  Vec3Q eye;
  Vec3Q look_at;
  Vec3Q up{Rational(0), Rational(0), Rational(1)};
  Rational fov_degrees{40};
  int width = 512;
  int height = 512;

  /// Throws std::invalid_argument when eye == look_at, up is parallel to the
  /// view direction, or the size is not positive.
  void validate() const;
};

/// Fixed shading preset: one key light given in camera coordinates
/// (right, up, towards the viewer), gray-white material, dark background.
struct Lighting {
  Eigen::Vector3d key{-0.45, 0.6, 0.66};
  double ambient = 0.12;
  double diffuse = 0.72;
  double specular = 0.3;
  double shininess = 40.0;
  std::array<double, 3> material{0.93, 0.92, 0.88};
  std::array<std::uint8_t, 3> background{18, 20, 26};
};

struct RenderOptions {
  double clip_radius = 3.0;
  unsigned threads = 1;
  Lighting lighting;
};

struct RayHit {
  double t = 0.0;
  Eigen::Vector3d point;
  /// Unit vector along grad f; zero when near_singular.
  Eigen::Vector3d normal;
  /// |grad f| fell below the threshold, so the normal is not reliable.
  bool near_singular = false;
  /// The interval path was indeterminate and exact Sturm isolation decided.
  bool exact_fallback = false;
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first

  std::array<std::uint8_t, 3> pixel(int x, int y) const;
  /// Binary PPM (P6, maxval 255).
  std::string ppm() const;
  void write_ppm(const std::string& path) const;
};

/// Surface prepared for many rays. Each ray is re-based at the middle of its
/// parameter range, so the substituted coefficients stay of moderate size
/// inside the clipping ball.
class RaySurface {
 public:
  explicit RaySurface(const MultiPoly& F);

  int degree() const { return degree_; }

  /// Enclosures of the coefficients of s -> f(base + s dir), constant term first.
  std::vector<Interval> ray_coefficients(const Eigen::Vector3d& base, const Eigen::Vector3d& dir) const;
  /// The same polynomial exactly; double components are taken as exact rationals.
  UniPoly exact_ray_polynomial(const Eigen::Vector3d& base, const Eigen::Vector3d& dir) const;

  /// Smallest root of t -> f(origin + t dir) in [t_lo, t_hi]. The ray is
  /// evaluated from the base point origin + t_mid dir rounded to doubles.
  std::optional<RayHit> first_hit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, double t_lo,
                                  double t_hi) const;

  /// f and grad f at an affine point (midpoint coefficients).
  double value(const Eigen::Vector3d& p) const;
  Eigen::Vector3d gradient(const Eigen::Vector3d& p) const;
  Interval value_enclosure(const Eigen::Vector3d& p) const;

 private:
  struct Term {
    std::array<std::uint8_t, 3> e;
    Interval c;
  };
  MultiPoly F_;
  int degree_ = 0;
  std::vector<Term> terms_;  // f(x, y, z) = F(x, y, z, 1)
  CompiledPoly f_;
  std::array<CompiledPoly, 3> grad_;
};

/// Convenience wrapper: first hit of origin + t dir with t in [t_lo, t_hi].
std::optional<RayHit> first_hit(const MultiPoly& F, const Vec3Q& origin, const Eigen::Vector3d& dir, double t_lo,
                                double t_hi);

/// Parameter range of the ray inside the ball |p| <= radius, clamped to t >= 0.
std::optional<std::pair<double, double>> clip_to_ball(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                                      double radius);

/// Direction of the ray through the centre of pixel (px, py).
Eigen::Vector3d pixel_direction(const Camera& camera, int px, int py);

/// Deterministic image: identical inputs give identical bytes for any thread count.
Image render(const MultiPoly& F, const Camera& camera, const RenderOptions& options = {});

/// Angle in radians between the gradient normal at the hit and the central
/// finite-difference normal with the given step; nullopt for near-singular hits.
std::optional<double> normal_check(const RaySurface& surface, const RayHit& hit, double step = 1e-5);

/// Default viewpoints for the named surfaces.
Camera default_camera(const std::string& surface, int width, int height);

}  // namespace nodal
