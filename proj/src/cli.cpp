#include "nodal/cli.hpp"

#include "nodal/catalog.hpp"
#include "nodal/icosahedral.hpp"
#include "nodal/parse.hpp"
#include "nodal/render.hpp"
#include "nodal/singularities.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#ifndef NODAL_VERSION
#define NODAL_VERSION "unknown"
#endif

namespace nodal {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamFlags {
  std::string alpha, beta, c;
  std::vector<std::string> named;  // name=EXPR
};

struct ResolvedSurface {
  std::string name;
  std::optional<SurfaceFamily> family;
  std::vector<std::string> param_names;
  std::vector<GoldenNumber> params;
  MultiPoly F;
  bool record = false;
};

GoldenNumber parse_expr(const std::string& text) {
  try {
    return parse_constant(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("malformed expression '" + text + "': " + e.what());
  } catch (const ArithmeticError& e) {
    throw UsageError("malformed expression '" + text + "': " + e.what());
  }
}

Rational parse_rational(const std::string& text) {
  const GoldenNumber g = parse_expr(text);
  if (g.sqrt5_part() != 0) throw UsageError("expected a rational number, got '" + text + "'");
  return g.rational_part();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) parts.push_back(item.substr(b, e - b + 1));
  }
  return parts;
}

std::map<std::string, std::string> collect_params(const ParamFlags& flags) {
  std::map<std::string, std::string> out;
  if (!flags.alpha.empty()) out["alpha"] = flags.alpha;
  if (!flags.beta.empty()) out["beta"] = flags.beta;
  if (!flags.c.empty()) out["c"] = flags.c;
  for (const auto& kv : flags.named) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects NAME=EXPR, got '" + kv + "'");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

ResolvedSurface resolve_surface(const std::string& selector, const ParamFlags& flags) {
  ResolvedSurface s;
  s.name = selector;
  const auto given = collect_params(flags);
  if (auto fam = find_family(selector)) {
    s.family = fam;
    s.param_names = fam->parameters;
    s.params = fam->record_parameters;
    for (const auto& [name, expr] : given) {
      const auto it = std::find(fam->parameters.begin(), fam->parameters.end(), name);
      if (it == fam->parameters.end()) throw UsageError("surface " + selector + " has no parameter '" + name + "'");
      s.params[static_cast<std::size_t>(it - fam->parameters.begin())] = parse_expr(expr);
    }
    s.F = fam->form(s.params);
    s.record = s.params == fam->record_parameters && !fam->record_parameters.empty();
    return s;
  }
  std::error_code ec;
  if (!std::filesystem::is_regular_file(selector, ec)) {
    throw UsageError("unknown surface '" + selector + "': not a catalog name or a readable file");
  }
  if (!given.empty()) throw UsageError("parameters are not accepted for a surface file");
  std::ifstream in(selector);
  std::stringstream text;
  text << in.rdbuf();
  try {
    s.F = parse_polynomial(text.str());
  } catch (const std::invalid_argument& e) {
    throw UsageError("malformed polynomial in " + selector + ": " + e.what());
  }
  if (s.F.degree() < 2) throw UsageError("surface in " + selector + " must have degree at least 2");
  if (!s.F.is_homogeneous()) s.F = homogenize(s.F, s.F.degree());
  return s;
}

Json parameters_json(const ResolvedSurface& s) {
  Json p = Json::object();
  for (std::size_t i = 0; i < s.params.size(); ++i) p[s.param_names[i]] = s.params[i].to_string();
  return p;
}

std::string parameters_text(const ResolvedSurface& s) {
  std::string t;
  for (std::size_t i = 0; i < s.params.size(); ++i) {
    if (i) t += ", ";
    t += s.param_names[i] + " = " + s.params[i].to_string();
  }
  return t;
}

unsigned default_threads() {
  if (const char* env = std::getenv("NODAL_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("NODAL_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct RunContext {
  std::vector<std::string> args;
  unsigned threads = 1;
};

Json reproducibility(const RunContext& ctx, const Json& parameters, const Json& precision) {
  Json r;
  r["tool"] = "nodal-atlas";
  r["version"] = NODAL_VERSION;
  r["command"] = ctx.args;
  r["parameters"] = parameters;
  r["precision"] = precision;
  r["threads"] = ctx.threads;
  return r;
}

Json precision_json(const FindOptions& o) {
  Json p;
  p["exact"] = "Q(sqrt5) over GMP rationals";
  p["interval"] = "binary64, outward rounded";
  p["target_radius"] = o.target_radius;
  p["chart_half_width"] = o.chart_half_width;
  return p;
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write report to " + path);
  f << j.dump(2) << "\n";
  if (!f) throw UsageError("cannot write report to " + path);
}

Json interval_json(const Interval& i) { return Json::array({i.lo, i.hi}); }

Json box_json(const Box3& b) { return Json::array({interval_json(b(0)), interval_json(b(1)), interval_json(b(2))}); }

std::string orbit_location(const Orbit& o) {
  std::string where;
  if (o.on_mid_line) where = "mid-line";
  else if (o.axis_order) where = std::to_string(*o.axis_order) + "-fold axis";
  else if (o.on_plane) where = "plane";
  else if (o.on_mirror_plane) where = "mirror plane";
  else where = "general";
  return where;
}

Json analysis_json(const ResolvedSurface& s, const SurfaceAnalysis& a, const RunContext& ctx, const FindOptions& o) {
  Json j;
  j["surface"] = s.name;
  j["parameter"] = parameters_json(s);
  j["degree"] = s.F.degree();
  j["total_count"] = a.count();
  j["a1_count"] = a.a1_count;
  j["complete"] = a.report.complete() && a.orbits.missing_images == 0;
  Json orbits = Json::array();
  for (const auto& orb : a.orbits.orbits) {
    const auto& rep = a.report.points[static_cast<std::size_t>(orb.representative)];
    Json jo;
    jo["size"] = orb.size;
    jo["type"] = to_string(orb.type);
    jo["representative"] = Json::array({rep.representative[0], rep.representative[1], rep.representative[2], rep.representative[3]});
    jo["on_mid_line"] = orb.on_mid_line;
    jo["on_plane"] = orb.on_plane;
    jo["on_mirror_plane"] = orb.on_mirror_plane;
    jo["axis_order"] = orb.axis_order ? Json(*orb.axis_order) : Json(nullptr);
    int exact = 0;
    for (int m : orb.members) exact += a.report.points[static_cast<std::size_t>(m)].exactly_confirmed;
    jo["exactly_confirmed"] = exact;
    orbits.push_back(jo);
  }
  j["orbits"] = orbits;
  j["missing_orbit_images"] = a.orbits.missing_images;
  Json unresolved = Json::array();
  for (const auto& u : a.report.unresolved) unresolved.push_back({{"chart", u.chart}, {"box", box_json(u.box)}});
  j["unresolved_boxes"] = unresolved;
  j["miyaoka_bound"] = s.F.degree() >= 3 ? Json(miyaoka_bound(s.F.degree())) : Json(nullptr);
  j["boxes_visited"] = a.report.boxes_visited;
  j["runtime_seconds"] = a.seconds;
  j["reproducibility"] = reproducibility(ctx, parameters_json(s), precision_json(o));
  return j;
}

void print_analysis(std::ostream& out, const ResolvedSurface& s, const SurfaceAnalysis& a) {
  out << "surface " << s.name;
  if (!s.params.empty()) out << " (" << parameters_text(s) << ")";
  out << "\n";
  out << "certified singular points: " << a.count() << " (A1: " << a.a1_count << ")";
  out << ", unresolved boxes: " << a.report.unresolved.size() << "\n";
  out << "orbits:";
  for (const auto& o : a.orbits.orbits) out << " " << o.size << " [" << to_string(o.type) << ", " << orbit_location(o) << "]";
  out << "\n";
  if (a.orbits.missing_images) out << "orbit images not found: " << a.orbits.missing_images << "\n";
  if (s.F.degree() >= 3) out << "Miyaoka bound: " << miyaoka_bound(s.F.degree()) << "\n";
  out << "runtime: " << std::fixed << std::setprecision(1) << a.seconds << " s\n";
  out.unsetf(std::ios::floatfield);
}

FindOptions find_options(const RunContext& ctx, std::ofstream* debug) {
  FindOptions o;
  o.threads = ctx.threads;
  if (debug) {
    o.on_unresolved = [debug](const UnresolvedBox& u) {
      *debug << Json{{"chart", u.chart}, {"box", box_json(u.box)}}.dump() << "\n";
    };
  }
  return o;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_catalog(std::ostream& out, bool json) {
  const auto fams = families();
  const auto records = record_table();
  if (json) {
    Json j;
    Json fj = Json::array();
    for (const auto& f : fams) {
      Json rp = Json::object();
      for (std::size_t i = 0; i < f.record_parameters.size(); ++i) rp[f.parameters[i]] = f.record_parameters[i].to_string();
      fj.push_back({{"name", f.name}, {"degree", f.degree}, {"parameters", f.parameters}, {"record_parameters", rp},
                    {"description", f.description}});
    }
    j["families"] = fj;
    Json rj = Json::array();
    for (const auto& r : records) {
      rj.push_back({{"degree", r.degree}, {"nodes", r.nodes}, {"miyaoka_bound", miyaoka_bound(r.degree)},
                    {"attribution", r.attribution}, {"maximal", r.maximal}, {"note", r.note}});
    }
    j["records"] = rj;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "Surfaces\n";
  for (const auto& f : fams) {
    out << "  " << std::left << std::setw(14) << f.name << " degree " << std::setw(3) << f.degree;
    if (!f.record_parameters.empty()) {
      out << " record at ";
      for (std::size_t i = 0; i < f.parameters.size(); ++i) {
        out << (i ? ", " : "") << f.parameters[i] << " = " << f.record_parameters[i];
      }
    }
    out << "\n    " << f.description << "\n";
  }
  out << "\nNode records\n";
  out << "  degree  nodes  Miyaoka  maximal  attribution\n";
  for (const auto& r : records) {
    out << "  " << std::right << std::setw(6) << r.degree << std::setw(7) << r.nodes << std::setw(9)
        << miyaoka_bound(r.degree) << std::setw(9) << (r.maximal ? "yes" : "no") << "  " << r.attribution << " ("
        << r.note << ")\n";
  }
  return 0;
}

int cmd_group(std::ostream& out, bool census, bool invariants) {
  if (!census && !invariants) census = invariants = true;
  bool ok = true;
  const IcosaGroup& g = icosahedral_group();
  if (census) {
    const auto c = g.order_census();
    out << "group order " << g.size() << ", elements by order:";
    for (int k = 1; k < static_cast<int>(c.size()); ++k) {
      if (c[k]) out << " " << k << ":" << c[k];
    }
    out << "\n";
    const bool good = g.size() == 60 && c[1] == 1 && c[2] == 15 && c[3] == 20 && c[5] == 24;
    out << "census (1, 15, 20, 24): " << (good ? "PASS" : "FAIL") << "\n";
    ok = ok && good;
  }
  if (invariants) {
    std::vector<std::pair<std::string, MultiPoly>> forms = {
        {"x^2+y^2+z^2", invariant_sphere()}, {"Q", invariant_Q()}, {"R", invariant_R()}};
    for (const auto& f : families()) forms.emplace_back(f.name, f.form(f.record_parameters));
    for (const auto& [name, p] : forms) {
      const bool inv = is_invariant(g, p);
      out << "invariant under all " << g.size() << " elements: " << std::left << std::setw(14) << name << " "
          << (inv ? "PASS" : "FAIL") << "\n";
      ok = ok && inv;
    }
  }
  return ok ? 0 : 1;
}

int cmd_singularities(std::ostream& out, const RunContext& ctx, const std::string& surface, const ParamFlags& flags,
                      const std::string& report, const std::string& debug_path) {
  const ResolvedSurface s = resolve_surface(surface, flags);
  std::ofstream debug;
  if (!debug_path.empty()) {
    debug.open(debug_path);
    if (!debug) throw UsageError("cannot write debug boxes to " + debug_path);
  }
  const FindOptions o = find_options(ctx, debug_path.empty() ? nullptr : &debug);
  const SurfaceAnalysis a = analyze_surface(s.F, o);
  print_analysis(out, s, a);
  if (!report.empty()) write_json(report, analysis_json(s, a, ctx, o));
  return a.report.complete() && a.orbits.missing_images == 0 ? 0 : 1;
}

int cmd_verify(std::ostream& out, const RunContext& ctx, const std::string& surface, const ParamFlags& flags,
               const std::string& report) {
  const ResolvedSurface s = resolve_surface(surface, flags);
  const FindOptions o = find_options(ctx, nullptr);
  const SurfaceAnalysis a = analyze_surface(s.F, o);
  const int degree = s.F.degree();
  const long bound = degree >= 3 ? miyaoka_bound(degree) : 0;
  std::optional<int> expected;
  if (s.record) {
    for (const auto& r : record_table()) {
      if (r.degree == degree) expected = r.nodes;
    }
  }
  std::vector<std::string> problems;
  if (!a.report.complete()) problems.push_back(std::to_string(a.report.unresolved.size()) + " unresolved boxes");
  if (a.orbits.missing_images) problems.push_back(std::to_string(a.orbits.missing_images) + " orbit images missing");
  if (a.a1_count != a.count()) problems.push_back(std::to_string(a.count() - a.a1_count) + " points not classified A1");
  if (degree >= 3 && a.count() > bound) problems.push_back("count exceeds the Miyaoka bound");
  if (expected && a.count() != *expected) {
    problems.push_back("certified " + std::to_string(a.count()) + " real nodes, expected " + std::to_string(*expected));
  }
  if (!report.empty()) write_json(report, analysis_json(s, a, ctx, o));
  if (problems.empty()) {
    out << a.count() << " nodes certified";
    if (degree >= 3) out << " (bound " << bound << ")";
    out << "\n";
    return 0;
  }
  print_analysis(out, s, a);
  for (const auto& p : problems) out << "DISCREPANCY: " << p << "\n";
  return 1;
}

std::vector<std::vector<GoldenNumber>> parse_grid(const std::string& text, std::size_t params) {
  std::vector<std::vector<GoldenNumber>> grid;
  for (const auto& point : split(text, ';')) {
    std::vector<GoldenNumber> values;
    for (const auto& v : split(point, ',')) values.push_back(parse_expr(v));
    if (values.size() != params) {
      throw UsageError("grid point '" + point + "' needs " + std::to_string(params) + " values");
    }
    grid.push_back(std::move(values));
  }
  if (grid.empty()) throw UsageError("empty grid");
  return grid;
}

int cmd_scan(std::ostream& out, const RunContext& ctx, const std::string& surface, const std::string& grid_text,
             const std::string& step_text, const std::string& report) {
  const auto family = find_family(surface);
  if (!family) throw UsageError("unknown surface family '" + surface + "'");
  if (family->parameters.empty()) throw UsageError("surface " + surface + " has no parameters to scan");
  std::vector<std::vector<GoldenNumber>> grid;
  Json candidates_json = Json::array();
  if (!grid_text.empty()) {
    grid = parse_grid(grid_text, family->parameters.size());
  } else if (family->name == "barth-sextic") {
    grid = {{GoldenNumber(Rational(1, 2))}, {GoldenNumber(1)}, {GoldenNumber(Rational(3, 2))}, {parse_constant("(2+sqrt5)/4")}};
  } else if (family->name == "barth-decic") {
    const auto candidates = scan_decic_candidates();
    out << "decic candidates (two extra orbits on the mirror planes):\n";
    for (const auto& c : candidates) {
      out << "  beta = " << c.exact.beta << ", c = " << c.exact.c << "  (residual " << c.residual << ")\n";
      candidates_json.push_back({{"beta", c.exact.beta.to_string()}, {"c", c.exact.c.to_string()},
                                 {"beta_approx", c.beta}, {"c_approx", c.c}, {"residual", c.residual}});
    }
    grid = decic_scan_grid(candidates, parse_rational(step_text));
  } else if (family->parameters.size() == 1) {
    grid = {{GoldenNumber(1)}, {GoldenNumber(Rational(1, 3))}, {tau()}};
  } else {
    throw UsageError("no default grid for " + surface + "; pass --grid");
  }

  const FindOptions o = find_options(ctx, nullptr);
  std::vector<ScanEntry> entries;
  for (const auto& point : grid) {
    auto e = family_scan(*family, {point}, o).front();
    out << "  ";
    for (std::size_t i = 0; i < point.size(); ++i) out << (i ? ", " : "") << family->parameters[i] << " = " << point[i];
    out << "  ->  " << e.count << (e.complete ? "" : " (incomplete)") << "  [" << std::fixed << std::setprecision(1)
        << e.seconds << " s]\n";
    out.unsetf(std::ios::floatfield);
    out.flush();
    entries.push_back(std::move(e));
  }
  // Flag relative to the whole grid.
  int generic = -1;
  for (const auto& e : entries) {
    if (e.complete && (generic < 0 || e.count < generic)) generic = e.count;
  }
  const ScanEntry* best = nullptr;
  for (auto& e : entries) {
    e.above_generic = e.complete && generic >= 0 && e.count > generic;
    if (e.complete && (!best || e.count > best->count)) best = &e;
  }
  if (best) {
    out << "maximum certified count " << best->count << " at ";
    for (std::size_t i = 0; i < best->parameters.size(); ++i) {
      out << (i ? ", " : "") << family->parameters[i] << " = " << best->parameters[i];
    }
    out << "\n";
  }
  if (!report.empty()) {
    Json j;
    j["surface"] = family->name;
    if (!candidates_json.empty()) j["candidates"] = candidates_json;
    Json ej = Json::array();
    for (const auto& e : entries) {
      Json p = Json::object();
      for (std::size_t i = 0; i < e.parameters.size(); ++i) p[family->parameters[i]] = e.parameters[i].to_string();
      ej.push_back({{"parameter", p}, {"total_count", e.count}, {"complete", e.complete}, {"orbit_sizes", e.orbit_sizes},
                    {"above_generic", e.above_generic}, {"runtime_seconds", e.seconds}});
    }
    j["entries"] = ej;
    j["maximum_count"] = best ? Json(best->count) : Json(nullptr);
    j["miyaoka_bound"] = miyaoka_bound(family->degree);
    Json grid_params = Json::array();
    for (const auto& point : grid) {
      Json p = Json::array();
      for (const auto& v : point) p.push_back(v.to_string());
      grid_params.push_back(p);
    }
    j["reproducibility"] = reproducibility(ctx, grid_params, precision_json(o));
    write_json(report, j);
  }
  return best ? 0 : 1;
}

Vec3Q parse_vec3(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("expected three comma-separated values, got '" + text + "'");
  return {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])};
}

int cmd_render(std::ostream& out, const RunContext& ctx, const std::string& surface, const ParamFlags& flags, int width,
               int height, const std::string& clip, const std::string& camera_text, const std::string& up_text,
               const std::string& fov_text, const std::string& path, const std::string& report) {
  const ResolvedSurface s = resolve_surface(surface, flags);
  if (width <= 0 || height <= 0) throw UsageError("image size must be positive");
  Camera cam = default_camera(s.name, width, height);
  if (!camera_text.empty()) {
    const auto parts = split(camera_text, ' ');
    if (parts.size() != 2) throw UsageError("--camera expects \"ex,ey,ez lx,ly,lz\"");
    cam.eye = parse_vec3(parts[0]);
    cam.look_at = parse_vec3(parts[1]);
  }
  if (!up_text.empty()) cam.up = parse_vec3(up_text);
  if (!fov_text.empty()) cam.fov_degrees = parse_rational(fov_text);
  try {
    cam.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  RenderOptions opt;
  const Rational clip_q = parse_rational(clip);
  if (clip_q <= 0) throw UsageError("--clip must be positive");
  opt.clip_radius = clip_q.get_d();
  opt.threads = ctx.threads;
  const auto t0 = std::chrono::steady_clock::now();
  const Image img = render(s.F, cam, opt);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  try {
    img.write_ppm(path);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  out << "wrote " << path << " (" << width << "x" << height << ", " << std::fixed << std::setprecision(1) << seconds
      << " s)\n";
  out.unsetf(std::ios::floatfield);
  if (!report.empty()) {
    const auto v = [](const Vec3Q& q) { return Json::array({q[0].get_str(), q[1].get_str(), q[2].get_str()}); };
    Json j;
    j["surface"] = s.name;
    j["parameter"] = parameters_json(s);
    j["image"] = path;
    j["width"] = width;
    j["height"] = height;
    j["clip_radius"] = clip_q.get_str();
    j["camera"] = {{"eye", v(cam.eye)}, {"look_at", v(cam.look_at)}, {"up", v(cam.up)}, {"fov_degrees", cam.fov_degrees.get_str()}};
    j["runtime_seconds"] = seconds;
    Json precision;
    precision["exact"] = "Q(sqrt5) over GMP rationals";
    precision["interval"] = "binary64, outward rounded";
    j["reproducibility"] = reproducibility(ctx, parameters_json(s), precision);
    write_json(report, j);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified singular points and renderings of icosahedral nodal surfaces", "nodal-atlas"};
  app.set_version_flag("--version", NODAL_VERSION);
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: NODAL_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  ParamFlags flags;
  const auto add_params = [&](CLI::App* sub) {
    sub->add_option("--alpha", flags.alpha, "Sextic parameter, exact expression such as (2*tau+1)/4");
    sub->add_option("--beta", flags.beta, "Decic parameter beta");
    sub->add_option("--c", flags.c, "Decic parameter c");
    sub->add_option("--param", flags.named, "NAME=EXPR for any family parameter");
  };

  auto* catalog = app.add_subcommand("catalog", "List catalog surfaces and node records");
  auto* catalog_list = catalog->add_subcommand("list", "Print the catalog");
  catalog->require_subcommand(1);
  bool catalog_json = false;
  catalog_list->add_flag("--json", catalog_json, "JSON output");

  auto* group = app.add_subcommand("group", "Icosahedral group checks");
  bool census = false, check_invariants = false;
  group->add_flag("--census", census, "Element counts by order");
  group->add_flag("--check-invariants", check_invariants, "Exact invariance of the catalog forms");

  std::string surface, report, debug_boxes;
  auto* sing = app.add_subcommand("singularities", "Certify the real singular points of a surface");
  sing->add_option("--surface", surface, "Catalog name or polynomial file")->required();
  add_params(sing);
  sing->add_option("--report", report, "JSON report path");
  sing->add_option("--debug-boxes", debug_boxes, "Stream unresolved boxes as JSON lines");

  std::string grid, step = "1/64";
  auto* scan = app.add_subcommand("scan", "Certified counts over a parameter grid");
  scan->add_option("--surface", surface, "Family name")->required();
  scan->add_option("--grid", grid, "Points separated by ';', parameters by ','");
  scan->add_option("--step", step, "Neighbour offset around decic candidates");
  scan->add_option("--report", report, "JSON report path");

  int width = 512, height = 512;
  std::string clip = "3", camera, up, fov, out_path;
  auto* rend = app.add_subcommand("render", "Ray-cast a surface to a binary PPM");
  rend->add_option("--surface", surface, "Catalog name or polynomial file")->required();
  add_params(rend);
  rend->add_option("--width", width, "Image width");
  rend->add_option("--height", height, "Image height");
  rend->add_option("--clip", clip, "Clipping ball radius");
  rend->add_option("--camera", camera, "\"ex,ey,ez lx,ly,lz\" (rational)");
  rend->add_option("--up", up, "Up vector ux,uy,uz");
  rend->add_option("--fov", fov, "Vertical field of view in degrees");
  rend->add_option("--out", out_path, "Output file")->required();
  rend->add_option("--report", report, "JSON report path");

  auto* verify = app.add_subcommand("verify", "Certify and compare with the known node count");
  verify->add_option("--surface", surface, "Catalog name or polynomial file")->required();
  add_params(verify);
  verify->add_option("--report", report, "JSON report path");

  std::vector<std::string> argv_store{"nodal-atlas"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    RunContext ctx;
    ctx.args = args;
    ctx.threads = threads > 0 ? static_cast<unsigned>(threads) : default_threads();
    if (*catalog) return cmd_catalog(out, catalog_json);
    if (*group) return cmd_group(out, census, check_invariants);
    if (*sing) return cmd_singularities(out, ctx, surface, flags, report, debug_boxes);
    if (*scan) return cmd_scan(out, ctx, surface, grid, step, report);
    if (*rend) {
      return cmd_render(out, ctx, surface, flags, width, height, clip, camera, up, fov, out_path, report);
    }
    if (*verify) return cmd_verify(out, ctx, surface, flags, report);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace nodal
