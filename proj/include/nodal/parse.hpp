#pragma once

// Text grammar for constants and polynomials.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/' | <juxtaposition>) unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'tau' | 'sqrt5' | 'x' | 'y' | 'z' | 'w' | '(' expr ')'
//
// Division is allowed only by nonzero constants, so `p/q` literals and
// expressions such as `(2*tau+1)/4` stay exact.

#include "nodal/exactnum.hpp"
#include "nodal/multipoly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace nodal {

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), pos(position) {}
  std::size_t pos;
};

MultiPoly parse_polynomial(std::string_view text);

/// Parses an expression that must reduce to a constant.
GoldenNumber parse_constant(std::string_view text);

}  // namespace nodal
