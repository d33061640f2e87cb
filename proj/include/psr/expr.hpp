#pragma once

// Elements of the free commutative semiring N[g_1..g_m] in canonical form.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace psr {

using Coef = std::uint64_t;
using Rational = mpq_class;

/// Thrown when a coefficient or exponent leaves the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

Coef checked_add(Coef a, Coef b);
Coef checked_mul(Coef a, Coef b);

/// Exponent vector with trailing zeros trimmed, so constants are the empty
/// vector regardless of how many generators are declared.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps);

  static Monomial generator(std::size_t index, std::uint32_t power = 1);

  std::uint32_t exponent(std::size_t i) const { return i < exps_.size() ? exps_[i] : 0; }
  std::size_t size() const { return exps_.size(); }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint64_t degree() const;
  bool is_one() const { return exps_.empty(); }

  Monomial operator*(const Monomial& o) const;
  Monomial pow(std::uint32_t k) const;
  bool divides(const Monomial& o) const;
  /// Requires divides(o); returns o / *this.
  Monomial quotient_of(const Monomial& o) const;

  /// Graded order: higher degree is larger, then larger leading exponents.
  std::strong_ordering operator<=>(const Monomial& o) const;
  bool operator==(const Monomial& o) const = default;

  std::size_t hash() const;

 private:
  void trim();
  std::vector<std::uint32_t> exps_;
};

struct Term {
  Monomial mono;
  Coef coef = 0;
  bool operator==(const Term&) const = default;
};

class Expr {
 public:
  Expr() = default;

  static Expr zero() { return Expr(); }
  static Expr one() { return constant(1); }
  static Expr constant(Coef c);
  static Expr generator(std::size_t index);
  static Expr monomial(const Monomial& m, Coef c = 1);
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static Expr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant expression; throws for non-constants.
  Coef constant_value() const;
  std::uint64_t degree() const;
  Coef max_coef() const;
  Coef coef_of(const Monomial& m) const;
  /// Number of generator slots referenced (max trimmed monomial length).
  std::size_t arity() const;

  Expr operator+(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr pow(std::uint64_t k) const;
  Expr scaled(Coef c) const;
  Expr times(const Monomial& m, Coef c = 1) const;

  /// Coefficientwise comparison: every term of *this is present in o with at
  /// least the same coefficient.
  bool dominated_by(const Expr& o) const;
  /// Requires rhs.dominated_by(*this).
  Expr minus(const Expr& rhs) const;

  bool operator==(const Expr& o) const = default;
  /// Total order used for deterministic tie-breaking.
  std::strong_ordering operator<=>(const Expr& o) const;

  std::size_t hash() const;

 private:
  std::vector<Term> terms_;  // ascending by monomial, coefficients nonzero
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

/// Raw expression tree produced by the parser, before normalization.
struct ExprAst {
  enum class Kind { Literal, Name, Add, Mul, Pow };
  Kind kind = Kind::Literal;
  Coef literal = 0;
  std::string name;
  std::uint64_t exponent = 0;
  std::vector<std::shared_ptr<const ExprAst>> children;
  int line = 0;
  int column = 0;
};
using ExprAstPtr = std::shared_ptr<const ExprAst>;

class NormalizeError : public std::runtime_error {
 public:
  NormalizeError(const std::string& msg, int line, int column)
      : std::runtime_error(msg), line(line), column(column) {}
  int line;
  int column;
};

/// Expands a raw tree into canonical form. Unknown names and exponents above
/// max_exponent are errors.
Expr normalize(const ExprAst& ast, std::span<const std::string> names,
               std::uint64_t max_exponent = 64);

/// Canonical text, e.g. "x^2 + 2*x + 1"; zero prints as "0".
std::string to_string(const Expr& e, std::span<const std::string> names);
std::string to_string(const Monomial& m, std::span<const std::string> names);

Rational evaluate(const Expr& e, std::span<const Rational> values);

std::string to_string(const Rational& q);

}  // namespace psr
