#include "psr/certificate.hpp"

#include <unordered_map>

namespace psr {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Refl: return "refl";
    case Rule::ZeroOne: return "zero_one";
    case Rule::Base: return "base";
    case Rule::NatEmbed: return "nat";
    case Rule::AddCong: return "add";
    case Rule::MulCong: return "mul";
    case Rule::Trans: return "trans";
  }
  return "?";
}

const Expr& Certificate::lhs() const { return node_->lhs; }
const Expr& Certificate::rhs() const { return node_->rhs; }

std::size_t Certificate::size() const {
  if (!node_) return 0;
  std::size_t s = 1;
  for (const auto& ch : node_->children) s += ch.size();
  return s;
}

bool Certificate::operator==(const Certificate& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  const auto &a = *node_, &b = *o.node_;
  return a.rule == b.rule && a.lhs == b.lhs && a.rhs == b.rhs && a.index == b.index && a.n == b.n &&
         a.m == b.m && a.c == b.c && a.children == b.children;
}

Certificate Certificate::raw(Rule rule, Expr lhs, Expr rhs, std::size_t index, Coef n, Coef m, Expr c,
                             std::vector<Certificate> children) {
  auto node = std::make_shared<CertNode>();
  node->rule = rule;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  node->index = index;
  node->n = n;
  node->m = m;
  node->c = std::move(c);
  node->children = std::move(children);
  return Certificate(std::move(node));
}

Certificate Certificate::refl(const Expr& x) { return raw(Rule::Refl, x, x, 0, 0, 0, x, {}); }

Certificate Certificate::zero_one() { return raw(Rule::ZeroOne, Expr::zero(), Expr::one(), 0, 0, 0, {}, {}); }

Certificate Certificate::base(const Presentation& p, std::size_t index) {
  const auto& r = p.relations.at(index);
  return raw(Rule::Base, r.lhs, r.rhs, index, 0, 0, {}, {});
}

Certificate Certificate::nat(Coef n, Coef m) {
  if (n > m) throw std::invalid_argument("nat certificate requires n <= m");
  return raw(Rule::NatEmbed, Expr::constant(n), Expr::constant(m), 0, n, m, {}, {});
}

Certificate Certificate::add(const Certificate& child, const Expr& c) {
  if (c.is_zero()) return child;
  return raw(Rule::AddCong, child.lhs() + c, child.rhs() + c, 0, 0, 0, c, {child});
}

Certificate Certificate::mul(const Certificate& child, const Expr& c) {
  if (c == Expr::one()) return child;
  return raw(Rule::MulCong, child.lhs() * c, child.rhs() * c, 0, 0, 0, c, {child});
}

Certificate Certificate::trans(const Certificate& first, const Certificate& second) {
  if (!(first.rhs() == second.lhs()))
    throw std::invalid_argument("trans: middle expressions differ");
  if (first.node().rule == Rule::Refl) return second;
  if (second.node().rule == Rule::Refl) return first;
  return raw(Rule::Trans, first.lhs(), second.rhs(), 0, 0, 0, {}, {first, second});
}

Certificate Certificate::chain(const std::vector<Certificate>& steps) {
  if (steps.empty()) throw std::invalid_argument("chain of zero steps");
  Certificate acc = steps.front();
  for (std::size_t i = 1; i < steps.size(); ++i) acc = trans(acc, steps[i]);
  return acc;
}

Certificate Certificate::weaken(const Expr& lhs, const Expr& extra) {
  if (extra.is_zero()) return refl(lhs);
  return add(mul(zero_one(), extra), lhs);
}

namespace {

class Replayer {
 public:
  explicit Replayer(const Presentation& p) : p_(p) {}

  std::pair<Expr, Expr> run(const Certificate& c) {
    if (!c.valid()) throw ReplayError("empty certificate");
    const CertNode* key = &c.node();
    if (auto it = done_.find(key); it != done_.end()) return it->second;
    auto concl = compute(c.node());
    if (!(concl.first == c.lhs()) || !(concl.second == c.rhs()))
      throw ReplayError(std::string("node '") + rule_name(c.node().rule) +
                        "' does not conclude its recorded inequality " + p_.str(c.lhs()) +
                        " <= " + p_.str(c.rhs()));
    done_.emplace(key, concl);
    return concl;
  }

 private:
  std::pair<Expr, Expr> compute(const CertNode& n) {
    auto want = [&](std::size_t k) {
      if (n.children.size() != k)
        throw ReplayError(std::string("rule '") + rule_name(n.rule) + "' expects " +
                          std::to_string(k) + " premises");
    };
    switch (n.rule) {
      case Rule::Refl:
        want(0);
        return {n.lhs, n.lhs};
      case Rule::ZeroOne:
        want(0);
        return {Expr::zero(), Expr::one()};
      case Rule::Base:
        want(0);
        if (n.index >= p_.relations.size())
          throw ReplayError("relation index " + std::to_string(n.index) + " out of range");
        return {p_.relations[n.index].lhs, p_.relations[n.index].rhs};
      case Rule::NatEmbed:
        want(0);
        if (n.n > n.m) throw ReplayError("nat rule with n > m");
        return {Expr::constant(n.n), Expr::constant(n.m)};
      case Rule::AddCong: {
        want(1);
        auto [a, b] = run(n.children[0]);
        return {a + n.c, b + n.c};
      }
      case Rule::MulCong: {
        want(1);
        auto [a, b] = run(n.children[0]);
        return {a * n.c, b * n.c};
      }
      case Rule::Trans: {
        want(2);
        auto [a, b] = run(n.children[0]);
        auto [b2, c] = run(n.children[1]);
        if (!(b == b2))
          throw ReplayError("trans premises do not meet: " + p_.str(b) + " vs " + p_.str(b2));
        return {a, c};
      }
    }
    throw ReplayError("unknown rule");
  }

  const Presentation& p_;
  std::unordered_map<const CertNode*, std::pair<Expr, Expr>> done_;
};

}  // namespace

std::pair<Expr, Expr> replay(const Presentation& p, const Certificate& c) {
  Replayer r(p);
  try {
    return r.run(c);
  } catch (const OverflowError& e) {
    throw ReplayError(std::string("arithmetic overflow during replay: ") + e.what());
  }
}

}  // namespace psr
