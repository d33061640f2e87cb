#pragma once

// Budgeted bidirectional proof search for the preorder generated by a
// presentation.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "psr/certificate.hpp"
#include "psr/hom.hpp"
#include "psr/kernels.hpp"

namespace psr {

class BudgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Budget {
  std::uint64_t max_nodes = 8;    // rewrite steps in a derivation
  std::uint64_t max_degree = 6;   // total degree of intermediate expressions
  std::uint64_t max_coef = 64;    // coefficient magnitude of intermediates
  std::size_t max_states = 200000;
  kernels::Mode mode = kernels::Mode::Parallel;

  /// Throws BudgetError if any limit is zero.
  void validate() const;
};

struct Verdict {
  enum class Kind { Holds, Refuted, Unknown };
  Kind kind = Kind::Unknown;
  Certificate cert;        // Holds
  std::optional<Hom> hom;  // Refuted: f(x) > f(y) for goal x <= y

  static Verdict holds(Certificate c) { return {Kind::Holds, std::move(c), std::nullopt}; }
  static Verdict refuted(Hom f) { return {Kind::Refuted, {}, std::move(f)}; }
  static Verdict unknown() { return {}; }
  bool is_holds() const { return kind == Kind::Holds; }
  bool is_refuted() const { return kind == Kind::Refuted; }
};

const char* verdict_name(Verdict::Kind k);

/// Searches for a derivation of x <= y only; never refutes.
std::optional<Certificate> prove(const Presentation& p, const Expr& x, const Expr& y, const Budget& b);

/// A verified monotone f with f(x) > f(y), from the attached family if any,
/// otherwise from default_valuations.
std::optional<Hom> refute(const Presentation& p, const Expr& x, const Expr& y);

/// prove, then refute.
Verdict check_preorder(const Presentation& p, const Expr& x, const Expr& y, const Budget& b);

Verdict nat_compare(Coef n, Coef m);

/// Bounded search for a certificate of n <= m with n > m, for m < n <= max_n.
/// Returns the first one found (the presentation is then degenerate).
std::optional<Certificate> find_degeneracy(const Presentation& p, Coef max_n, const Budget& b);

}  // namespace psr
