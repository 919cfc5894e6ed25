#pragma once

// Real projective singular points of surfaces F(x,y,z,w) = 0: certified
// search over the four standard affine charts, classification, orbits under
// the icosahedral group, and location on the special lines and planes.

#include "nodal/catalog.hpp"
#include "nodal/icosahedral.hpp"
#include "nodal/rootcert.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nodal {

enum class SingularType { A1, A2, degenerate, unknown };

std::string to_string(SingularType t);

struct Classification {
  SingularType type = SingularType::unknown;
  int corank = -1;  // -1 when not decided
};

/// Chart k sets coordinate k to 1 (k = 3 is w = 1); the chart coordinates are
/// the remaining three in increasing index order.
constexpr int kChartOrder[4] = {3, 2, 1, 0};

/// Chart polynomial in x, y, z.
MultiPoly chart_polynomial(const MultiPoly& F, int chart);

/// Homogeneous enclosure (chart coordinate exactly 1) of a chart box.
Point4<Interval> chart_to_projective(int chart, const Box3& box);
/// Chart coordinates of a homogeneous enclosure; nullopt when the chart
/// coordinate may vanish.
std::optional<Box3> projective_to_chart(int chart, const Point4<Interval>& p);

struct SingularPoint {
  int chart = 3;
  /// Certified enclosure of the root in chart coordinates.
  Box3 box;
  /// Region of the chart where no other singular point exists.
  Box3 uniqueness;
  Point4<double> representative{};
  Point4<Interval> coords{};
  /// Enclosure of the chart polynomial over `box`; contains 0.
  Interval value;
  Classification type;
  int orbit = -1;
  std::optional<int> mid_line;
  std::optional<int> plane;
  /// Mirror plane of the full symmetry group (normal to a mid-line).
  std::optional<int> mirror_plane;
  /// Order of a rotation axis through the point (2, 3 or 5) if any.
  std::optional<int> axis_order;
  std::optional<int> axis;
  /// Exact coordinates when they were recovered in Q(sqrt5).
  std::optional<Point4<GoldenNumber>> exact;
  /// True when an exact algebraic singular point was shown to lie in `box`
  /// (points on rotation axes); otherwise only F's enclosure contains 0.
  bool exactly_confirmed = false;
};

struct UnresolvedBox {
  int chart;
  Box3 box;
};

struct FindOptions {
  /// Each chart is searched on [-h, h]^3; h > 1 so the charts overlap.
  double chart_half_width = 9.0 / 8;
  double target_radius = 1e-8;
  double try_radius = 1.0 / 64;
  int depth_limit = 40;
  std::size_t max_boxes = 50'000'000;
  unsigned threads = 1;
  /// Streamed for every undecided box.
  std::function<void(const UnresolvedBox&)> on_unresolved;
};

struct SingularReport {
  std::vector<SingularPoint> points;
  std::vector<UnresolvedBox> unresolved;
  std::array<std::size_t, 4> per_chart{};  // certified roots found in each chart before merging
  std::size_t boxes_visited = 0;
  bool complete() const { return unresolved.empty(); }
};

/// Every real projective singular point of F, each listed once.
SingularReport find_singular_points(const MultiPoly& F, const FindOptions& options = {});

/// Hessian-rank classification on an interval enclosure; escalates to exact
/// arithmetic when exact coordinates are known.
Classification classify(const MultiPoly& F, const SingularPoint& point);
/// Exact classification at a point with coordinates in Q(sqrt5).
Classification classify_exact(const MultiPoly& F, const Point4<GoldenNumber>& point);

struct Orbit {
  int size = 0;
  int representative = -1;  // index into the point list
  std::vector<int> members;
  SingularType type = SingularType::unknown;
  bool on_mid_line = false;
  bool on_plane = false;
  bool on_mirror_plane = false;
  std::optional<int> axis_order;
};

struct OrbitReport {
  std::vector<Orbit> orbits;
  /// Images g p that matched no listed point; nonzero means the point list is
  /// not closed under the group.
  int missing_images = 0;
};

/// Union of points related by group elements, matched by interval containment
/// of the transformed boxes. Sets `orbit` on each point.
OrbitReport orbit_decompose(std::vector<SingularPoint>& points, const IcosaGroup& group);

struct SpecialGeometry {
  std::vector<Vec3G> mid_lines;
  std::vector<Vec3G> planes;  // normals
  std::vector<Vec3G> three_fold;
  std::vector<Vec3G> five_fold;
};
SpecialGeometry special_geometry(const IcosaGroup& group);

/// Tags mid-line, plane, mirror plane and axis membership by interval tests against the
/// exact directions.
void locate(std::vector<SingularPoint>& points, const SpecialGeometry& geometry);

/// A singular point on a line through the origin: t * dir (w = 1) or the point
/// at infinity (dir : 0).
struct LinePoint {
  bool at_infinity = false;
  /// Isolating interval for t (lo == hi when exact).
  Rational lo, hi;
  std::optional<Point4<GoldenNumber>> exact;
};

/// Restricts F and its four partials to the line t * dir and isolates the real
/// roots of their gcd exactly; also tests the point at infinity.
std::vector<LinePoint> exact_midline_solve(const MultiPoly& F, const Vec3G& dir);

/// Marks points on rotation axes as exactly confirmed when an exact singular
/// point of the axis lies in their box; fills `exact` for Q(sqrt5) points.
void confirm_on_axes(const MultiPoly& F, std::vector<SingularPoint>& points, const SpecialGeometry& geometry);

/// Full pipeline: search, classification, location, exact confirmation, orbits.
struct SurfaceAnalysis {
  SingularReport report;
  OrbitReport orbits;
  int a1_count = 0;
  double seconds = 0.0;
  int count() const { return static_cast<int>(report.points.size()); }
};
SurfaceAnalysis analyze_surface(const MultiPoly& F, const FindOptions& options = {});

struct ScanEntry {
  std::vector<GoldenNumber> parameters;
  int count = 0;
  bool complete = false;
  std::vector<int> orbit_sizes;
  bool above_generic = false;
  double seconds = 0.0;
};

/// Certified counts for each grid point; entries whose count exceeds the
/// smallest complete count of the grid are flagged.
std::vector<ScanEntry> family_scan(const SurfaceFamily& family, const std::vector<std::vector<GoldenNumber>>& grid,
                                   const FindOptions& options = {});

/// Candidate decic parameters where two extra node orbits appear on the mirror
/// planes at once, found numerically and recognized as exact elements of
/// Q(sqrt5). Each candidate still has to be certified.
struct DecicCandidate {
  DecicParameters exact;
  double beta = 0.0;
  double c = 0.0;
  double residual = 0.0;
  /// x^2 + z^2 of the two extra nodes in the mirror plane y = 0.
  double radius_sq[2] = {0.0, 0.0};
};
std::vector<DecicCandidate> scan_decic_candidates();

/// The candidates with their neighbours at +-step in each parameter.
std::vector<std::vector<GoldenNumber>> decic_scan_grid(const std::vector<DecicCandidate>& candidates,
                                                       const Rational& step);

}  // namespace nodal
