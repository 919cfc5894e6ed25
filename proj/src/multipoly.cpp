#include "nodal/multipoly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <vector>

namespace nodal {

namespace {

constexpr const char* kVarNames[4] = {"x", "y", "z", "w"};

template <typename T, typename Convert>
T evaluate_generic(const MultiPoly::TermMap& terms, const Point4<T>& pt, Convert convert) {
  // Powers are cached per variable; the degree is bounded by the exponent width.
  std::array<std::vector<T>, 4> powers;
  for (const auto& [e, c] : terms) {
    for (int v = 0; v < 4; ++v) {
      auto& pw = powers[static_cast<std::size_t>(v)];
      if (pw.empty()) pw.push_back(T(1));
      while (pw.size() <= e[static_cast<std::size_t>(v)]) pw.push_back(pw.back() * pt[static_cast<std::size_t>(v)]);
    }
  }
  T acc(0);
  for (const auto& [e, c] : terms) {
    T t = convert(c);
    for (int v = 0; v < 4; ++v) {
      if (e[static_cast<std::size_t>(v)] != 0) t = t * powers[static_cast<std::size_t>(v)][e[static_cast<std::size_t>(v)]];
    }
    acc = acc + t;
  }
  return acc;
}

}  // namespace

MultiPoly::MultiPoly(GoldenNumber c) {
  if (!c.is_zero()) terms_.emplace(Exponent{0, 0, 0, 0}, std::move(c));
}

MultiPoly MultiPoly::variable(Var v) {
  Exponent e{0, 0, 0, 0};
  e[static_cast<std::size_t>(v)] = 1;
  return term(GoldenNumber(1), e);
}

MultiPoly MultiPoly::term(GoldenNumber c, Exponent e) {
  MultiPoly p;
  p.add_term(e, c);
  p.recompute_degree();
  return p;
}

void MultiPoly::add_term(const Exponent& e, const GoldenNumber& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::recompute_degree() {
  degree_ = terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

int MultiPoly::degree_in(Var v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, e[static_cast<std::size_t>(v)]);
  return d;
}

bool MultiPoly::is_homogeneous() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [this](const auto& t) { return total_degree(t.first) == degree_; });
}

GoldenNumber MultiPoly::constant_term() const { return coeff({0, 0, 0, 0}); }

GoldenNumber MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GoldenNumber() : it->second;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  recompute_degree();
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  recompute_degree();
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e{};
      for (std::size_t v = 0; v < 4; ++v) {
        const int s = ea[v] + eb[v];
        if (s > 255) throw DegreeError("exponent exceeds 255");
        e[v] = static_cast<std::uint8_t>(s);
      }
      out.add_term(e, ca * cb);
    }
  }
  out.recompute_degree();
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const GoldenNumber& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& [e, x] : terms_) x *= c;
  }
  recompute_degree();
  return *this;
}

GoldenNumber MultiPoly::evaluate(const Point4<GoldenNumber>& pt) const {
  return evaluate_generic<GoldenNumber>(terms_, pt, [](const GoldenNumber& c) { return c; });
}

Interval MultiPoly::evaluate(const Point4<Interval>& pt) const {
  return evaluate_generic<Interval>(terms_, pt, [](const GoldenNumber& c) { return to_interval(c); });
}

double MultiPoly::evaluate(const Point4<double>& pt) const {
  return evaluate_generic<double>(terms_, pt, [](const GoldenNumber& c) { return c.to_double(); });
}

CompiledPoly::CompiledPoly(const MultiPoly& p) : degree_(p.degree()) {
  terms_.reserve(p.size());
  for (const auto& [e, c] : p.terms()) {
    const Interval ci = to_interval(c);
    terms_.push_back({e, ci, c.to_double()});
  }
}

namespace {

template <typename T, typename Terms, typename Coeff>
T evaluate_compiled(const Terms& terms, int degree, const Point4<T>& pt, Coeff coeff) {
  std::array<std::vector<T>, 4> powers;
  for (int v = 0; v < 4; ++v) {
    auto& pw = powers[static_cast<std::size_t>(v)];
    pw.resize(static_cast<std::size_t>(degree) + 1, T(1));
    for (int k = 1; k <= degree; ++k) pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k) - 1] * pt[static_cast<std::size_t>(v)];
  }
  T acc(0);
  for (const auto& t : terms) {
    T m = coeff(t);
    for (std::size_t v = 0; v < 4; ++v) {
      if (t.e[v] != 0) m = m * powers[v][t.e[v]];
    }
    acc = acc + m;
  }
  return acc;
}

}  // namespace

Interval CompiledPoly::evaluate(const Point4<Interval>& pt) const {
  return evaluate_compiled<Interval>(terms_, degree_, pt, [](const Term& t) { return t.c; });
}

double CompiledPoly::evaluate(const Point4<double>& pt) const {
  return evaluate_compiled<double>(terms_, degree_, pt, [](const Term& t) { return t.mid; });
}

std::string MultiPoly::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    const bool unit = c == GoldenNumber(1) && total_degree(e) > 0;
    if (!unit) os << "(" << c << ")";
    bool need_star = !unit;
    for (std::size_t v = 0; v < 4; ++v) {
      if (e[v] == 0) continue;
      if (need_star) os << "*";
      os << kVarNames[v];
      if (e[v] > 1) os << "^" << static_cast<int>(e[v]);
      need_star = true;
    }
  }
  return os;
}

MultiPoly pow(const MultiPoly& p, unsigned e) {
  MultiPoly result(1);
  MultiPoly base = p;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

GoldenNumber evaluate(const MultiPoly& p, const Point4<GoldenNumber>& pt) { return p.evaluate(pt); }

MultiPoly derivative(const MultiPoly& p, Var v) {
  const auto vi = static_cast<std::size_t>(v);
  MultiPoly out;
  for (const auto& [e, c] : p.terms()) {
    if (e[vi] == 0) continue;
    Exponent d = e;
    --d[vi];
    out += MultiPoly::term(c * GoldenNumber(static_cast<long>(e[vi])), d);
  }
  return out;
}

std::array<MultiPoly, 4> gradient(const MultiPoly& p) {
  return {derivative(p, Var::x), derivative(p, Var::y), derivative(p, Var::z), derivative(p, Var::w)};
}

PolyMatrix4 hessian(const MultiPoly& p) {
  const auto g = gradient(p);
  PolyMatrix4 h;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = derivative(g[static_cast<std::size_t>(i)], static_cast<Var>(j));
      h[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return h;
}

MultiPoly homogenize(const MultiPoly& p, int target_degree) {
  if (p.degree_in(Var::w) > 0) throw DegreeError("homogenize: polynomial already contains w");
  if (target_degree < p.degree()) throw DegreeError("homogenize: target degree too small");
  if (target_degree > 255) throw DegreeError("homogenize: target degree exceeds 255");
  MultiPoly out;
  for (const auto& [e, c] : p.terms()) {
    Exponent h = e;
    h[3] = static_cast<std::uint8_t>(target_degree - total_degree(e));
    out += MultiPoly::term(c, h);
  }
  return out;
}

MultiPoly specialize(const MultiPoly& p, Var v, const GoldenNumber& value) {
  const auto vi = static_cast<std::size_t>(v);
  MultiPoly out;
  std::vector<GoldenNumber> powers{GoldenNumber(1)};
  for (const auto& [e, c] : p.terms()) {
    while (powers.size() <= e[vi]) powers.push_back(powers.back() * value);
    Exponent r = e;
    r[vi] = 0;
    out += MultiPoly::term(c * powers[e[vi]], r);
  }
  return out;
}

MultiPoly dehomogenize(const MultiPoly& p) { return specialize(p, Var::w, GoldenNumber(1)); }

MultiPoly compose(const MultiPoly& p, const std::array<MultiPoly, 4>& images) {
  std::array<std::vector<MultiPoly>, 4> powers;
  for (std::size_t v = 0; v < 4; ++v) powers[v].push_back(MultiPoly(1));
  MultiPoly out;
  for (const auto& [e, c] : p.terms()) {
    MultiPoly t(c);
    for (std::size_t v = 0; v < 4; ++v) {
      auto& pw = powers[v];
      while (pw.size() <= e[v]) pw.push_back(pw.back() * images[v]);
      if (e[v] != 0) t *= pw[e[v]];
    }
    out += t;
  }
  return out;
}

MultiPoly substitute_linear(const MultiPoly& p, const Mat3G& m) {
  std::array<MultiPoly, 4> images;
  for (int r = 0; r < 3; ++r) {
    MultiPoly row;
    for (int c = 0; c < 3; ++c) {
      if (!m(r, c).is_zero()) row += MultiPoly::variable(static_cast<Var>(c)) * m(r, c);
    }
    images[static_cast<std::size_t>(r)] = row;
  }
  images[3] = MultiPoly::variable(Var::w);
  return compose(p, images);
}

UniPoly restrict_to_line(const MultiPoly& p, const Point4<GoldenNumber>& base,
                         const Point4<GoldenNumber>& dir) {
  if (std::all_of(dir.begin(), dir.end(), [](const GoldenNumber& d) { return d.is_zero(); })) {
    throw std::invalid_argument("restrict_to_line: zero direction");
  }
  std::array<UniPoly, 4> lin;
  for (std::size_t v = 0; v < 4; ++v) lin[v] = UniPoly({base[v], dir[v]});
  std::array<std::vector<UniPoly>, 4> powers;
  for (std::size_t v = 0; v < 4; ++v) powers[v].push_back(UniPoly::constant(GoldenNumber(1)));
  UniPoly out;
  for (const auto& [e, c] : p.terms()) {
    UniPoly t = UniPoly::constant(c);
    for (std::size_t v = 0; v < 4; ++v) {
      auto& pw = powers[v];
      while (pw.size() <= e[v]) pw.push_back(pw.back() * lin[v]);
      if (e[v] != 0) t *= pw[e[v]];
    }
    out += t;
  }
  return out;
}

}  // namespace nodal
