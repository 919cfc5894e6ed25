#pragma once

// Named icosahedral surfaces, their families, and node-count records.

#include "nodal/exactnum.hpp"
#include "nodal/multipoly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nodal {

/// x^2 + y^2 + z^2.
MultiPoly invariant_sphere();
/// (tau^2 x^2 - y^2)(tau^2 y^2 - z^2)(tau^2 z^2 - x^2).
MultiPoly invariant_Q();
/// (x^2 - tau^4 y^2)(y^2 - tau^4 z^2)(z^2 - tau^4 x^2)(x+y+z)(x+y-z)(x-y+z)(x-y-z).
MultiPoly invariant_R();

/// Parameter of the 65-node sextic, (2 tau + 1) / 4.
GoldenNumber alpha_sextic();

/// Q - alpha (x^2+y^2+z^2-w^2)^2 w^2, the homogenized affine sextic family.
MultiPoly sextic_family(const GoldenNumber& alpha);

/// R - beta w^2 (x^2+y^2+z^2-w^2)^2 (x^2+y^2+z^2-c w^2)^2.
MultiPoly decic_family(const GoldenNumber& beta, const GoldenNumber& c);

/// Parameters of the decic family found by the family scan; see
/// `scan_decic_candidates` in singularities.hpp for the procedure that produces them.
struct DecicParameters {
  GoldenNumber beta;
  GoldenNumber c;
};
DecicParameters decic_scanned_parameters();

struct SurfaceFamily {
  std::string name;
  int degree = 0;
  /// Parameter names in the order `form` expects them.
  std::vector<std::string> parameters;
  std::function<MultiPoly(const std::vector<GoldenNumber>&)> form;
  /// Parameter values of the named record member, if any.
  std::vector<GoldenNumber> record_parameters;
  std::string description;
  bool icosahedral = true;
};

std::vector<SurfaceFamily> families();
std::optional<SurfaceFamily> find_family(const std::string& name);

/// floor(4 d (d-1)^2 / 9). Throws std::invalid_argument for d < 3.
long miyaoka_bound(int d);

struct NodeRecord {
  int degree;
  int nodes;
  std::string attribution;
  bool maximal;       // proven to be the maximum in this degree
  std::string note;
};

std::vector<NodeRecord> record_table();

}  // namespace nodal
