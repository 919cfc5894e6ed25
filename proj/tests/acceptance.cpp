// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include "nodal/catalog.hpp"
#include "nodal/cli.hpp"
#include "nodal/icosahedral.hpp"
#include "nodal/render.hpp"
#include "nodal/rootcert.hpp"
#include "nodal/singularities.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace nodal;
using Json = nlohmann::json;

namespace {

constexpr const char* kSexticGolden = "6a4bd6fb93c9158669411fe4a6810643db61d35a2e8a52b75acdac3d22182a87";
constexpr double kResidual = 1e-9;

const MultiPoly X = MultiPoly::variable(Var::x);
const MultiPoly Y = MultiPoly::variable(Var::y);
const MultiPoly Z = MultiPoly::variable(Var::z);
const MultiPoly W = MultiPoly::variable(Var::w);

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " " << n << "  " << detail << std::endl;
  if (!ok) ++failures;
}

struct CliRun {
  int code;
  std::string out, err;
  Json doc;
};

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nodal_acceptance_" + std::to_string(::getpid()) + "_" + name);
}

CliRun cli(std::vector<std::string> args) {
  const auto path = temp_path("report.json");
  args.push_back("--report");
  args.push_back(path.string());
  std::ostringstream out, err;
  CliRun r{run_cli(args, out, err), out.str(), err.str(), {}};
  std::ifstream f(path);
  if (f) r.doc = Json::parse(f, nullptr, false);
  std::filesystem::remove(path);
  return r;
}

std::string sha256(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string str(long v) { return std::to_string(v); }

// 1, 2, 3, 6 ------------------------------------------------------------------

int sextic_count = -1;
Json sextic_report;

void criterion_1() {
  const CliRun r = cli({"verify", "--surface", "barth-sextic"});
  sextic_report = r.doc;
  const Json& d = r.doc;
  const bool parsed = d.is_object();
  const int total = parsed ? d["total_count"].get<int>() : -1;
  const int a1 = parsed ? d["a1_count"].get<int>() : -1;
  const std::size_t unresolved = parsed ? d["unresolved_boxes"].size() : 0;
  sextic_count = total;
  const bool ok1 = r.code == 0 && r.out == "65 nodes certified (bound 66)\n" && total == 65 && a1 == 65 &&
                   unresolved == 0 && d["complete"] == true;
  report(1, ok1,
         "barth-sextic: " + str(total) + " certified, " + str(a1) + " A1, " + str(static_cast<long>(unresolved)) +
             " unresolved, exit " + str(r.code));
}

void criterion_3() {
  const Json& d = sextic_report;
  const bool parsed = d.is_object();
  int sum = 0, off_line_20 = 0;
  std::string sizes;
  if (parsed) {
    for (const auto& o : d["orbits"]) {
      const int size = o["size"].get<int>();
      sum += size;
      sizes += (sizes.empty() ? "" : " ") + str(size);
      if (size == 20 && o["on_mid_line"] == false) ++off_line_20;
    }
  }
  report(3, sum == 65 && off_line_20 == 1,
         "orbit sizes {" + sizes + "} sum " + str(sum) + ", off-mid-line 20-orbits " + str(off_line_20));
}

void criterion_2() {
  const CliRun r = cli({"singularities", "--surface", "barth-sextic", "--alpha", "1"});
  const Json& d = r.doc;
  int total = -1, on_line = 0;
  bool complete = false;
  if (d.is_object()) {
    total = d["total_count"].get<int>();
    complete = d["complete"] == true && d["unresolved_boxes"].empty();
    for (const auto& o : d["orbits"]) {
      if (o["on_mid_line"] == true) on_line += o["size"].get<int>();
    }
  }
  report(2, r.code == 0 && complete && total == 45 && on_line == 45,
         "alpha = 1: " + str(total) + " certified, " + str(on_line) + " on mid-lines");
}

void criterion_6() {
  bool maximal = false;
  for (const auto& rec : record_table()) {
    if (rec.degree == 6 && rec.nodes == 65) maximal = rec.maximal;
  }
  report(6, sextic_count == 65 && sextic_count <= miyaoka_bound(6) && maximal,
         "certified " + str(sextic_count) + " <= bound " + str(miyaoka_bound(6)) + ", degree-6 record maximal " +
             (maximal ? "yes" : "no"));
}

// 4 ---------------------------------------------------------------------------

void criterion_4() {
  const CliRun r = cli({"scan", "--surface", "barth-decic"});
  const Json& d = r.doc;
  int best = -1, complete345 = 0;
  std::string where;
  if (d.is_object()) {
    if (d["maximum_count"].is_number()) best = d["maximum_count"].get<int>();
    for (const auto& e : d["entries"]) {
      if (e["total_count"] == 345 && e["complete"] == true) {
        ++complete345;
        where = e["parameter"].dump();
      }
    }
  }
  report(4, r.code == 0 && best == 345 && complete345 >= 1,
         "decic scan: maximum certified count " + str(best) + (where.empty() ? "" : " at " + where));
}

// 5 ---------------------------------------------------------------------------

void criterion_5() {
  const long b6 = miyaoka_bound(6), b8 = miyaoka_bound(8), b10 = miyaoka_bound(10), b12 = miyaoka_bound(12);
  report(5, b6 == 66 && b8 == 174 && b10 == 360 && b12 == 645,
         "Miyaoka bounds " + str(b6) + " " + str(b8) + " " + str(b10) + " " + str(b12));
}

// 7 ---------------------------------------------------------------------------

void criterion_7() {
  const IcosaGroup& group = icosahedral_group();
  const auto d = decic_scanned_parameters();
  const std::vector<std::pair<std::string, MultiPoly>> forms = {
      {"Q", invariant_Q()},
      {"R", invariant_R()},
      {"sextic(alpha*)", sextic_family(alpha_sextic())},
      {"sextic(1/3)", sextic_family(GoldenNumber(Rational(1, 3)))},
      {"decic(record)", decic_family(d.beta, d.c)},
      {"decic(2/7, -3)", decic_family(GoldenNumber(Rational(2, 7)), GoldenNumber(-3))},
  };
  int invariant = 0;
  for (const auto& [name, f] : forms) {
    bool ok = true;
    for (const auto& g : group.elements) ok = ok && act_on_poly(g, f) == f;
    if (ok) ++invariant;
  }
  std::map<int, int> census;
  for (const auto& g : group.elements) ++census[g.order()];
  const std::map<int, int> expected{{1, 1}, {2, 15}, {3, 20}, {5, 24}};
  std::string c;
  for (const auto& [k, v] : census) c += (c.empty() ? "" : " ") + str(k) + ":" + str(v);
  report(7, group.elements.size() == 60 && invariant == static_cast<int>(forms.size()) && census == expected,
         str(invariant) + "/" + str(static_cast<long>(forms.size())) + " forms invariant under " +
             str(static_cast<long>(group.elements.size())) + " elements, census " + c);
}

// 8 ---------------------------------------------------------------------------

bool euler_identity() {
  const auto d = decic_scanned_parameters();
  bool ok = true;
  for (const MultiPoly& f : {invariant_sphere(), invariant_Q(), invariant_R(), sextic_family(alpha_sextic()),
                             sextic_family(GoldenNumber(1)), decic_family(d.beta, d.c)}) {
    const auto g = gradient(f);
    const MultiPoly euler = X * g[0] + Y * g[1] + Z * g[2] + W * g[3];
    ok = ok && f.is_homogeneous() && euler == MultiPoly(static_cast<long>(f.degree())) * f;
  }
  return ok;
}

// Sign changes on a 400-point sample grid versus exact isolation on [-1, 1].
int sturm_sampling_disagreements(int rays) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> coord(-12, 12);
  const auto d = decic_scanned_parameters();
  const MultiPoly forms[2] = {sextic_family(alpha_sextic()), decic_family(d.beta, d.c)};
  int bad = 0;
  for (int trial = 0; trial < rays; ++trial) {
    const MultiPoly& f = forms[trial % 2];
    const Point4<GoldenNumber> base{GoldenNumber(Rational(coord(rng), 8)), GoldenNumber(Rational(coord(rng), 8)),
                                    GoldenNumber(Rational(coord(rng), 8)), GoldenNumber(1)};
    Point4<GoldenNumber> dir{GoldenNumber(coord(rng)), GoldenNumber(coord(rng)), GoldenNumber(coord(rng)), GoldenNumber(0)};
    if (dir[0].is_zero() && dir[1].is_zero() && dir[2].is_zero()) dir[0] = GoldenNumber(1);
    const UniPoly p = restrict_to_line(f, base, dir);
    if (p.degree() <= 0) continue;
    const auto roots = isolate_roots(p, -1, 1);
    const auto coeffs = p.interval_coeffs();
    const auto eval = [&](double t) {
      Interval acc(0.0);
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * Interval(t) + *it;
      return acc;
    };
    const int n = 400;
    Interval prev = eval(-1.0);
    double prev_t = -1.0;
    int changes = 0;
    bool ok = true;
    for (int i = 1; i <= n; ++i) {
      const double t = -1.0 + 2.0 * i / n;
      const Interval cur = eval(t);
      if (cur.certain_sign() != 0 && prev.certain_sign() != 0 && cur.certain_sign() != prev.certain_sign()) {
        ++changes;
        bool explained = false;
        for (const auto& iv : roots) explained = explained || (round_up(iv.hi) >= prev_t && round_down(iv.lo) <= t);
        ok = ok && explained;
      }
      if (cur.certain_sign() != 0) {
        prev = cur;
        prev_t = t;
      }
    }
    ok = ok && changes <= static_cast<int>(roots.size());
    const UniPoly q = square_free_part(p);
    for (const auto& iv : roots) {
      if (iv.exact()) {
        ok = ok && q(GoldenNumber(iv.lo)).is_zero();
      } else {
        ok = ok && sturm_count(q, iv.lo, iv.hi) == 1;
      }
    }
    if (!ok) ++bad;
  }
  return bad;
}

struct NewtonSoundness {
  long samples = 0;
  long rejected_boxes = 0;
  long counterexamples = 0;
};

// Random boxes for the singular-point system of the sextic in the chart w = 1.
// Inside every rejected box: no sampled point where all four equations can
// vanish, and no certified node.
NewtonSoundness newton_soundness(long target_samples) {
  const MultiPoly F = sextic_family(alpha_sextic());
  const MultiPoly f = chart_polynomial(F, 3);
  const SquareSystem sys{{derivative(f, Var::x), derivative(f, Var::y), derivative(f, Var::z)}, {f}};
  const CompiledPoly eqs[4] = {CompiledPoly(sys.equations[0]), CompiledPoly(sys.equations[1]),
                               CompiledPoly(sys.equations[2]), CompiledPoly(f)};
  FindOptions fo;
  std::vector<Vec3d> nodes;
  for (const auto& p : find_singular_points(F, fo).points) {
    if (auto b = projective_to_chart(3, p.coords)) nodes.push_back(box_center(*b));
  }
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-1.2, 1.2), unit(0.0, 1.0), e(-4.0, -0.5);
  std::uniform_int_distribution<std::size_t> pick(0, nodes.empty() ? 0 : nodes.size() - 1);
  NewtonSoundness s;
  while (s.samples < target_samples) {
    Vec3d c(u(rng), u(rng), u(rng));
    Vec3d r;
    for (int i = 0; i < 3; ++i) r(i) = std::pow(10.0, e(rng));
    if (!nodes.empty() && unit(rng) < 0.3) c = nodes[pick(rng)] + Vec3d(r(0) * (2 * unit(rng) - 1), r(1) * (2 * unit(rng) - 1), r(2) * (2 * unit(rng) - 1));
    const Box3 box = make_box(c, r);
    if (newton_certify(sys, box).status != CertifyStatus::rejected) continue;
    ++s.rejected_boxes;
    for (const auto& z : nodes) {
      bool inside = true;
      for (int i = 0; i < 3; ++i) inside = inside && box(i).contains(z(i));
      if (inside) ++s.counterexamples;
    }
    for (int k = 0; k < 100; ++k, ++s.samples) {
      Point4<Interval> p;
      for (std::size_t i = 0; i < 3; ++i) {
        const Interval& bi = box(static_cast<int>(i));
        p[i] = Interval(std::min(bi.hi, bi.lo + unit(rng) * (bi.hi - bi.lo)));
      }
      p[3] = Interval(1.0);
      bool all_zero = true;
      for (const auto& q : eqs) all_zero = all_zero && q.evaluate(p).contains_zero();
      if (all_zero) ++s.counterexamples;
    }
  }
  return s;
}

// Central differences with step h enclose df/dv up to h^2/6 max|d3f/dv3| on
// the segment, which is evaluated with intervals.
int gradient_fd_violations(int points) {
  const auto d = decic_scanned_parameters();
  const MultiPoly forms[2] = {sextic_family(alpha_sextic()), decic_family(d.beta, d.c)};
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const double h = 1e-4;
  int bad = 0;
  for (const MultiPoly& F : forms) {
    const MultiPoly f = dehomogenize(F);
    for (int v = 0; v < 3; ++v) {
      const Var var = static_cast<Var>(v);
      const MultiPoly g = derivative(f, var);
      const MultiPoly g3 = derivative(derivative(g, var), var);
      const CompiledPoly cf(f), cg(g), cg3(g3);
      for (int i = 0; i < points; ++i) {
        const Point4<double> p{u(rng), u(rng), u(rng), 1.0};
        Point4<Interval> at{p[0], p[1], p[2], p[3]};
        Point4<Interval> plus = at, minus = at, seg = at;
        const auto vi = static_cast<std::size_t>(v);
        plus[vi] = Interval(p[vi]) + Interval(h);
        minus[vi] = Interval(p[vi]) - Interval(h);
        seg[vi] = Interval(minus[vi].lo, plus[vi].hi);
        // Enclosures of the evaluation points themselves, since p +- h may round.
        const Interval fd = (cf.evaluate(plus) - cf.evaluate(minus)) / (plus[vi] - minus[vi]);
        const double bound = h * h / 6 * cg3.evaluate(seg).mag() * 1.0001;
        const Interval exact = cg.evaluate(at);
        const Interval allowed(fd.lo - bound, fd.hi + bound);
        if (exact.hi < allowed.lo || exact.lo > allowed.hi) ++bad;
      }
    }
  }
  return bad;
}

void criterion_8() {
  const bool euler = euler_identity();
  const int sturm_bad = sturm_sampling_disagreements(1000);
  const NewtonSoundness ns = newton_soundness(1000000);
  const int fd_bad = gradient_fd_violations(200);
  report(8, euler && sturm_bad == 0 && ns.samples >= 1000000 && ns.counterexamples == 0 && fd_bad == 0,
         std::string("Euler ") + (euler ? "ok" : "broken") + ", Sturm/sampling disagreements " + str(sturm_bad) +
             "/1000, Newton counterexamples " + str(ns.counterexamples) + " in " + str(ns.samples) + " samples (" +
             str(ns.rejected_boxes) + " rejected boxes), gradient FD violations " + str(fd_bad) + "/1200");
}

// 9 ---------------------------------------------------------------------------

void criterion_9() {
  const MultiPoly sphere = invariant_sphere() - W * W;
  const MultiPoly sextic = sextic_family(alpha_sextic());
  const auto render_with = [](const MultiPoly& F, const Camera& cam, unsigned threads) {
    RenderOptions o;
    o.threads = threads;
    return render(F, cam, o).ppm();
  };
  bool deterministic = true;
  for (const auto& [F, name] : {std::pair{sphere, "sphere"}, std::pair{sextic, "barth-sextic"}}) {
    const Camera cam = default_camera(name, 128, 128);
    const std::string ref = render_with(F, cam, 1);
    for (unsigned t : {2u, 4u, 7u}) deterministic = deterministic && render_with(F, cam, t) == ref;
  }
  const Camera cam = default_camera("barth-sextic", 512, 512);
  const Image img = render(sextic, cam);
  const RaySurface surface(sextic);
  const Eigen::Vector3d eye(cam.eye[0].get_d(), cam.eye[1].get_d(), cam.eye[2].get_d());
  long hits = 0, bad = 0;
  double worst = 0.0;
  for (int y = 0; y < cam.height; ++y) {
    for (int x = 0; x < cam.width; ++x) {
      const Eigen::Vector3d dir = pixel_direction(cam, x, y);
      const auto range = clip_to_ball(eye, dir, RenderOptions{}.clip_radius);
      const auto hit = range ? surface.first_hit(eye, dir, range->first, range->second) : std::nullopt;
      const bool background = img.pixel(x, y) == Lighting{}.background;
      if (background == hit.has_value()) ++bad;
      if (!hit) continue;
      ++hits;
      const double r = surface.value_enclosure(hit->point).mag();
      worst = std::max(worst, r);
      if (!(r <= kResidual)) ++bad;
    }
  }
  const std::string digest = sha256(img.ppm());
  std::ostringstream w;
  w << worst;
  report(9, deterministic && bad == 0 && hits > 0 && digest == kSexticGolden,
         std::string("renders ") + (deterministic ? "deterministic" : "differ") + " across threads, " + str(hits) +
             " hits, max |f| " + w.str() + ", " + str(bad) + " bad pixels, sha256 " + digest);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failures ? "FAILED " : "ALL PASS ") << failures << " failing, " << secs << " s" << std::endl;
  return failures ? 1 : 0;
}
