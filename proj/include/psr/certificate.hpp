#pragma once

// Derivation trees for the preorder generated by a presentation, and the
// independent replay checker.

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psr/presentation.hpp"

namespace psr {

enum class Rule { Refl, ZeroOne, Base, NatEmbed, AddCong, MulCong, Trans };

const char* rule_name(Rule r);

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CertNode;

/// Immutable, shareable derivation of lhs <= rhs. Every node stores its full
/// conclusion; replay recomputes all of them from the rules.
class Certificate {
 public:
  Certificate() = default;

  static Certificate refl(const Expr& x);
  static Certificate zero_one();
  static Certificate base(const Presentation& p, std::size_t index);
  static Certificate nat(Coef n, Coef m);
  static Certificate add(const Certificate& child, const Expr& c);
  static Certificate mul(const Certificate& child, const Expr& c);
  static Certificate trans(const Certificate& first, const Certificate& second);
  /// Left-to-right chain; a single element is returned as is.
  static Certificate chain(const std::vector<Certificate>& steps);
  /// lhs <= lhs + extra, via 0 <= 1 scaled by extra.
  static Certificate weaken(const Expr& lhs, const Expr& extra);

  /// Node with an asserted conclusion and no consistency check; used by the
  /// deserializer so that tampered files reach replay.
  static Certificate raw(Rule rule, Expr lhs, Expr rhs, std::size_t index, Coef n, Coef m, Expr c,
                         std::vector<Certificate> children);

  bool valid() const { return node_ != nullptr; }
  const CertNode& node() const { return *node_; }
  const Expr& lhs() const;
  const Expr& rhs() const;
  std::size_t size() const;
  bool operator==(const Certificate& o) const;

 private:
  explicit Certificate(std::shared_ptr<const CertNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const CertNode> node_;
};

struct CertNode {
  Rule rule = Rule::Refl;
  Expr lhs;
  Expr rhs;
  std::size_t index = 0;  // Base
  Coef n = 0, m = 0;      // NatEmbed
  Expr c;                 // AddCong / MulCong operand
  std::vector<Certificate> children;
};

/// Rechecks every node against the presentation and returns the root
/// conclusion. Throws ReplayError on the first malformed node.
std::pair<Expr, Expr> replay(const Presentation& p, const Certificate& c);

/// Calls visit(lhs, rhs) for every node conclusion (used to check that a
/// valuation is monotone along a derivation).
template <typename Visit>
void for_each_conclusion(const Certificate& c, Visit&& visit) {
  visit(c.lhs(), c.rhs());
  for (const auto& ch : c.node().children) for_each_conclusion(ch, visit);
}

}  // namespace psr
