#include "psr/presentation.hpp"

#include <algorithm>
#include <functional>

namespace psr {

namespace {

std::int64_t linear_value(const std::vector<std::int64_t>& coefs, std::int64_t c, const Monomial& m) {
  std::int64_t v = c;
  for (std::size_t i = 0; i < coefs.size(); ++i) v += coefs[i] * static_cast<std::int64_t>(m.exponent(i));
  return v;
}

}  // namespace

bool MonomialSet::contains(const Expr& e) const {
  if (e.terms().size() != 1 || e.terms()[0].coef != 1) return false;
  switch (kind) {
    case Kind::All:
      return true;
    case Kind::List:
      return std::find(list.begin(), list.end(), e) != list.end();
    case Kind::Where: {
      const auto& m = e.terms()[0].mono;
      for (const auto& c : where) {
        auto l = linear_value(c.lhs, c.lhs_const, m), r = linear_value(c.rhs, c.rhs_const, m);
        bool ok = c.op == ExponentConstraint::Op::Le ? l <= r
                  : c.op == ExponentConstraint::Op::Ge ? l >= r
                                                       : l == r;
        if (!ok) return false;
      }
      return true;
    }
  }
  return false;
}

std::vector<Expr> MonomialSet::enumerate(std::size_t arity, std::uint64_t max_degree) const {
  std::vector<Expr> out;
  std::vector<std::uint32_t> exps(arity, 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
    if (i == arity) {
      auto e = Expr::monomial(Monomial(exps));
      if (contains(e)) out.push_back(e);
      return;
    }
    for (std::uint64_t k = 0; k <= left; ++k) {
      exps[i] = static_cast<std::uint32_t>(k);
      rec(i + 1, left - k);
    }
    exps[i] = 0;
  };
  rec(0, max_degree);
  std::sort(out.begin(), out.end());
  return out;
}

Rational RatFun::eval(std::span<const Rational> point) const {
  Rational d = evaluate(den, point);
  if (d == 0) throw std::domain_error("rational function denominator vanishes");
  return evaluate(num, point) / d;
}

std::vector<std::string> HomFamily::param_names() const {
  std::vector<std::string> n;
  for (const auto& p : params) n.push_back(p.name);
  return n;
}

Box HomFamily::truncated_box(const Rational& fl) const {
  Box b;
  for (const auto& p : params) {
    Rational lo = p.lo_open ? Rational(p.lo + fl) : p.lo;
    Rational hi = p.hi_infinite ? Rational(1 / fl) : p.hi_open ? Rational(p.hi - fl) : p.hi;
    b.lo.push_back(lo);
    b.hi.push_back(hi);
    b.lo_truncated.push_back(p.lo_open);
    b.hi_truncated.push_back(p.hi_open || p.hi_infinite);
  }
  return b;
}

bool HomFamily::satisfies_constraints(std::span<const Rational> point) const {
  for (const auto& c : constraints)
    if (evaluate(c.lhs, point) > evaluate(c.rhs, point)) return false;
  return true;
}

std::vector<Rational> HomFamily::valuation_at(std::span<const Rational> point) const {
  std::vector<Rational> v;
  v.reserve(values.size());
  for (const auto& f : values) v.push_back(f.eval(point));
  return v;
}

}  // namespace psr
