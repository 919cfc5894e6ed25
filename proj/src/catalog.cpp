#include "nodal/catalog.hpp"

#include "nodal/parse.hpp"

#include <stdexcept>

namespace nodal {

namespace {

MultiPoly sphere_minus(const GoldenNumber& radius_sq) {
  const MultiPoly w = MultiPoly::variable(Var::w);
  return invariant_sphere() - MultiPoly(radius_sq) * w * w;
}

}  // namespace

MultiPoly invariant_sphere() {
  static const MultiPoly s = parse_polynomial("x^2 + y^2 + z^2");
  return s;
}

MultiPoly invariant_Q() {
  static const MultiPoly q = parse_polynomial("(tau^2 x^2 - y^2)(tau^2 y^2 - z^2)(tau^2 z^2 - x^2)");
  return q;
}

MultiPoly invariant_R() {
  static const MultiPoly r = parse_polynomial(
      "(x^2 - tau^4 y^2)(y^2 - tau^4 z^2)(z^2 - tau^4 x^2)"
      "(x + y + z)(x + y - z)(x - y + z)(x - y - z)");
  return r;
}

GoldenNumber alpha_sextic() { return (GoldenNumber(2) * tau() + GoldenNumber(1)) / GoldenNumber(4); }

MultiPoly sextic_family(const GoldenNumber& alpha) {
  const MultiPoly w = MultiPoly::variable(Var::w);
  return invariant_Q() - MultiPoly(alpha) * pow(sphere_minus(GoldenNumber(1)), 2) * w * w;
}

MultiPoly decic_family(const GoldenNumber& beta, const GoldenNumber& c) {
  const MultiPoly w = MultiPoly::variable(Var::w);
  return invariant_R() -
         MultiPoly(beta) * w * w * pow(sphere_minus(GoldenNumber(1)), 2) * pow(sphere_minus(c), 2);
}

DecicParameters decic_scanned_parameters() {
  // First candidate of scan_decic_candidates() that certifies the maximal
  // count; regenerate with `nodal-atlas scan --surface barth-decic`.
  return {parse_constant("-(11 + 5*sqrt5)/16"), parse_constant("(3 - sqrt5)/2")};
}

std::vector<SurfaceFamily> families() {
  std::vector<SurfaceFamily> out;
  out.push_back({"barth-sextic", 6, {"alpha"},
                 [](const std::vector<GoldenNumber>& p) { return sextic_family(p.at(0)); },
                 {alpha_sextic()},
                 "Q - alpha (S - w^2)^2 w^2; 45 nodes generically, 65 at alpha = (2 tau + 1)/4",
                 true});
  const DecicParameters d = decic_scanned_parameters();
  out.push_back({"barth-decic", 10, {"beta", "c"},
                 [](const std::vector<GoldenNumber>& p) { return decic_family(p.at(0), p.at(1)); },
                 {d.beta, d.c},
                 "R - beta w^2 (S - w^2)^2 (S - c w^2)^2; 345 nodes; (beta, c) from the family scan",
                 true});
  out.push_back({"sphere", 2, {},
                 [](const std::vector<GoldenNumber>&) { return sphere_minus(GoldenNumber(1)); },
                 {},
                 "x^2 + y^2 + z^2 - w^2, smooth",
                 true});
  out.push_back({"quadric", 2, {"r"},
                 [](const std::vector<GoldenNumber>& p) { return invariant_sphere() + MultiPoly(p.at(0)) * pow(MultiPoly::variable(Var::w), 2); },
                 {GoldenNumber(1)},
                 "x^2 + y^2 + z^2 + r w^2, smooth for r != 0",
                 true});
  return out;
}

std::optional<SurfaceFamily> find_family(const std::string& name) {
  for (auto& f : families()) {
    if (f.name == name) return f;
  }
  return std::nullopt;
}

long miyaoka_bound(int d) {
  if (d < 3) throw std::invalid_argument("miyaoka_bound: degree must be at least 3");
  const long dl = d;
  return 4 * dl * (dl - 1) * (dl - 1) / 9;
}

std::vector<NodeRecord> record_table() {
  return {
      {6, 65, "Barth (1996)", true, "maximal (Jaffe-Ruberman)"},
      {8, 168, "Endrass (1997)", false, "record"},
      {10, 345, "Barth", false, "record, bound 360 open"},
      {12, 600, "icosahedral dodecic (2001)", false, "record"},
  };
}

}  // namespace nodal
