#pragma once

// Finitely presented preordered semirings and the data attached to them.

#include <optional>
#include <string>
#include <vector>

#include "psr/expr.hpp"

namespace psr {

/// lhs <= rhs
struct Relation {
  Expr lhs;
  Expr rhs;
  bool operator==(const Relation&) const = default;
};

/// Linear constraint on exponents, e.g. "h >= g" over monomials g^a h^b.
struct ExponentConstraint {
  enum class Op { Le, Ge, Eq };
  std::vector<std::int64_t> lhs;  // coefficient per generator
  std::int64_t lhs_const = 0;
  Op op = Op::Ge;
  std::vector<std::int64_t> rhs;
  std::int64_t rhs_const = 0;
  bool operator==(const ExponentConstraint&) const = default;
};

/// The distinguished set M of monomials, given by a list or by exponent
/// constraints.
struct MonomialSet {
  enum class Kind { All, List, Where };
  Kind kind = Kind::All;
  std::vector<Expr> list;
  std::vector<ExponentConstraint> where;

  bool contains(const Expr& e) const;
  /// Members of total degree <= max_degree over `arity` generators, in
  /// ascending graded order.
  std::vector<Expr> enumerate(std::size_t arity, std::uint64_t max_degree) const;
  bool operator==(const MonomialSet&) const = default;
};

/// Closed or half-open parameter range; infinite upper ends are allowed.
struct Parameter {
  std::string name;
  Rational lo = 0;
  Rational hi = 1;
  bool lo_open = false;
  bool hi_open = false;
  bool hi_infinite = false;
  bool operator==(const Parameter&) const = default;
};

/// Ratio of polynomials (nonnegative integer coefficients) in the parameters.
struct RatFun {
  Expr num = Expr::one();
  Expr den = Expr::one();
  Rational eval(std::span<const Rational> point) const;
  bool operator==(const RatFun&) const = default;
};

/// lhs <= rhs over parameters
struct ParamConstraint {
  Expr lhs;
  Expr rhs;
  bool operator==(const ParamConstraint&) const = default;
};

struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
  /// Whether the lower (upper) end was produced by truncating an open or
  /// infinite end.
  std::vector<bool> lo_truncated;
  std::vector<bool> hi_truncated;
};

/// A parametrized slice of the spectrum: generator values are rational
/// functions of parameters ranging over a box cut out by constraints.
struct HomFamily {
  std::vector<Parameter> params;
  std::vector<ParamConstraint> constraints;
  std::vector<RatFun> values;  // one per generator
  Rational floor = Rational(1, 64);

  std::vector<std::string> param_names() const;
  /// Open lower ends a become a + floor, open upper ends b become b - floor,
  /// infinite upper ends become 1/floor.
  Box truncated_box(const Rational& floor) const;
  Box truncated_box() const { return truncated_box(floor); }
  bool satisfies_constraints(std::span<const Rational> point) const;
  /// Generator values at a parameter point (no feasibility check).
  std::vector<Rational> valuation_at(std::span<const Rational> point) const;
  bool operator==(const HomFamily&) const = default;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Relation> relations;
  std::optional<Expr> power_universal;
  std::vector<Expr> mult_set;
  std::optional<MonomialSet> m_set;
  std::optional<HomFamily> family;

  std::size_t arity() const { return generators.size(); }
  std::string str(const Expr& e) const { return to_string(e, generators); }
  /// Parses one expression over the declared generators.
  Expr expr(const std::string& text) const;
  bool operator==(const Presentation&) const = default;
};

}  // namespace psr
