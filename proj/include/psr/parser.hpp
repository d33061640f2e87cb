#pragma once

// Line-oriented presentation language:
//
//   generators: x, y;
//   relation: <expr> <= <expr>;
//   power_universal: <expr>;
//   mult_set: <expr>, ...;
//   m_set: all; | m_set: list <expr>, ...; | m_set: where <lin> >= <lin>, ...;
//   family {
//     param c in [1, 2];          # ( ) open ends, "inf" upper end
//     constraint: <poly> <= <poly>;
//     value x = <poly> [/ <factor>];
//     floor: 1/64;
//   }
//
// Expressions: nonnegative integer literals, names, + * ^ and parentheses;
// juxtaposition multiplies. '#' starts a comment.

#include <stdexcept>
#include <string>
#include <utility>

#include "psr/presentation.hpp"

namespace psr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line;
  int column;
  std::string message;
};

Presentation parse_presentation(const std::string& text);
std::string print_presentation(const Presentation& p);

/// Parses a single expression over the given names.
Expr parse_expr(const std::string& text, std::span<const std::string> names);
ExprAstPtr parse_expr_ast(const std::string& text);

/// "num / den" or a plain expression (denominator 1).
std::pair<Expr, Expr> parse_fraction(const std::string& text, std::span<const std::string> names);

Rational parse_rational(const std::string& text);

}  // namespace psr
