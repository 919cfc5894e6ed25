#include "nodal/parse.hpp"

#include <cctype>
#include <limits>

namespace nodal {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_primary() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= unary();
      } else if (c == '/') {
        const std::size_t at = ++pos_;
        const MultiPoly d = unary();
        if (!d.is_constant()) throw ParseError("division by a non-constant", at);
        const GoldenNumber k = d.constant_term();
        if (k.is_zero()) throw ParseError("division by zero", at);
        acc *= k.inverse();
      } else if (starts_primary()) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      const Integer e = integer();
      if (e > 255) throw ParseError("exponent too large", at);
      return pow(base, static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  MultiPoly primary() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return MultiPoly(GoldenNumber(Rational(integer())));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      // Identifiers are letters followed by letters or digits ("sqrt5").
      std::size_t end = pos_;
      while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string_view word = s_.substr(pos_, end - pos_);
      if (word == "tau") {
        pos_ = end;
        return MultiPoly(tau());
      }
      if (word == "sqrt5") {
        pos_ = end;
        return MultiPoly(GoldenNumber::sqrt5());
      }
      // Single-letter variables may be juxtaposed ("xy").
      const char v = s_[pos_];
      if (v == 'x' || v == 'y' || v == 'z' || v == 'w') {
        ++pos_;
        return MultiPoly::variable(v == 'x' ? Var::x : v == 'y' ? Var::y : v == 'z' ? Var::z : Var::w);
      }
      throw ParseError("unknown identifier '" + std::string(word) + "'", at);
    }
    if (c == '\0') throw ParseError("unexpected end of input", at);
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_polynomial(std::string_view text) { return Parser(text).parse(); }

GoldenNumber parse_constant(std::string_view text) {
  const MultiPoly p = parse_polynomial(text);
  if (!p.is_constant()) throw ParseError("expected a constant expression", 0);
  return p.constant_term();
}

}  // namespace nodal
