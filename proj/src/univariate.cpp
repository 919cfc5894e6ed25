#include "nodal/univariate.hpp"

#include <ostream>
#include <stdexcept>

namespace nodal {

UniPoly::UniPoly(std::vector<GoldenNumber> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(GoldenNumber c, int power) {
  std::vector<GoldenNumber> v(static_cast<std::size_t>(power) + 1);
  v.back() = std::move(c);
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GoldenNumber UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return {};
  return coeffs_[static_cast<std::size_t>(i)];
}

GoldenNumber UniPoly::operator()(const GoldenNumber& t) const {
  GoldenNumber acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

Interval UniPoly::operator()(const Interval& t) const {
  Interval acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += to_interval(*it);
  }
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<GoldenNumber> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * GoldenNumber(static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  const GoldenNumber inv = leading().inverse();
  UniPoly out = *this;
  for (auto& c : out.coeffs_) c *= inv;
  return out;
}

UniPoly UniPoly::reflected() const {
  UniPoly out = *this;
  for (std::size_t i = 1; i < out.coeffs_.size(); i += 2) out.coeffs_[i] = -out.coeffs_[i];
  return out;
}

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<GoldenNumber> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(r);
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const GoldenNumber& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

std::vector<Interval> UniPoly::interval_coeffs() const {
  std::vector<Interval> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(to_interval(c));
  return out;
}

std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const GoldenNumber& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (i > 0) os << "*t^" << i;
  }
  return os;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<GoldenNumber> rem = a.coeffs();
  std::vector<GoldenNumber> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const GoldenNumber inv_lead = b.leading().inverse();
  const auto& bc = b.coeffs();
  for (int i = a.degree(); i >= b.degree(); --i) {
    const GoldenNumber& top = rem[static_cast<std::size_t>(i)];
    if (top.is_zero()) continue;
    const GoldenNumber q = top * inv_lead;
    const int shift = i - b.degree();
    quot[static_cast<std::size_t>(shift)] = q;
    for (int j = 0; j <= b.degree(); ++j) rem[static_cast<std::size_t>(shift + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(b.degree()));
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a.monic();
  UniPoly y = b.monic();
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

UniPoly square_free_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.monic();
  const UniPoly g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

}  // namespace nodal
