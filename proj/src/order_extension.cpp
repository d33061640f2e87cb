#include "psr/order_extension.hpp"

#include <functional>

namespace psr {

namespace {

using Decomposition = std::vector<std::pair<std::vector<std::uint32_t>, Coef>>;

// Exponent vectors v with prod lead_i^v_i == target, largest exponents on
// earlier sub-generators first.
void exponent_vectors(const std::vector<Monomial>& leads, const std::vector<std::size_t>& usable,
                      std::size_t pos, const Monomial& rest, std::vector<std::uint32_t>& v,
                      std::vector<std::vector<std::uint32_t>>& out) {
  if (pos == usable.size()) {
    if (rest.is_one()) out.push_back(v);
    return;
  }
  const Monomial& l = leads[usable[pos]];
  std::uint32_t k = 0;
  Monomial acc;
  while ((acc * l).degree() <= rest.degree() && (acc * l).divides(rest)) {
    acc = acc * l;
    ++k;
  }
  for (std::uint32_t e = k + 1; e-- > 0;) {
    v[usable[pos]] = e;
    exponent_vectors(leads, usable, pos + 1, l.pow(e).quotient_of(rest), v, out);
  }
  v[usable[pos]] = 0;
}

}  // namespace

std::optional<Decomposition> decompose(const Expr& e, const std::vector<Expr>& subgens) {
  std::vector<Monomial> leads;
  std::vector<Coef> lead_coefs;
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < subgens.size(); ++i) {
    const auto& t = subgens[i];
    if (t.is_zero()) {
      leads.emplace_back();
      lead_coefs.push_back(0);
      continue;
    }
    leads.push_back(t.terms().back().mono);
    lead_coefs.push_back(t.terms().back().coef);
    if (!leads.back().is_one()) usable.push_back(i);
  }
  Decomposition out;
  Expr cur = e;
  try {
    while (!cur.is_zero()) {
      const Term& top = cur.terms().back();
      std::vector<std::vector<std::uint32_t>> cands;
      std::vector<std::uint32_t> v(subgens.size(), 0);
      exponent_vectors(leads, usable, 0, top.mono, v, cands);
      bool stepped = false;
      for (const auto& cand : cands) {
        Expr prod = Expr::one();
        Coef lc = 1;
        for (std::size_t i = 0; i < cand.size(); ++i) {
          if (cand[i] == 0) continue;
          prod *= subgens[i].pow(cand[i]);
          for (std::uint32_t j = 0; j < cand[i]; ++j) lc = checked_mul(lc, lead_coefs[i]);
        }
        if (top.coef % lc != 0) continue;
        Expr part = prod.scaled(top.coef / lc);
        if (!part.dominated_by(cur)) continue;
        cur = cur.minus(part);
        out.push_back({cand, top.coef / lc});
        stepped = true;
        break;
      }
      if (!stepped) return std::nullopt;
    }
  } catch (const OverflowError&) {
    return std::nullopt;
  }
  return out;
}

std::optional<Rational> eval_sub(const RfSpec& f, const Expr& e) {
  auto d = decompose(e, f.subgens);
  if (!d) return std::nullopt;
  Rational sum = 0;
  for (const auto& [v, c] : *d) {
    Rational t = c;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::uint32_t j = 0; j < v[i]; ++j) t *= f.values[i];
    sum += t;
  }
  return sum;
}

bool ExtRelations::contains(const Expr& x, const Expr& y) const {
  for (const auto& r : pairs)
    if (r.lhs == x && r.rhs == y) return true;
  if (rf) {
    auto fx = eval_sub(*rf, x), fy = eval_sub(*rf, y);
    if (fx && fy && *fx <= *fy) return true;
  }
  return false;
}

namespace {

Expr sum_sy(const std::vector<ExtTriple>& ts) {
  Expr r;
  for (const auto& t : ts) r += t.s * t.y;
  return r;
}

Expr sum_sx(const std::vector<ExtTriple>& ts) {
  Expr r;
  for (const auto& t : ts) r += t.s * t.x;
  return r;
}

}  // namespace

std::pair<Expr, Expr> replay_ext(const Presentation& p, const ExtRelations& R, const ExtCertificate& ec) {
  for (const auto& t : ec.triples)
    if (!R.contains(t.x, t.y))
      throw ExtError("triple cites (" + p.str(t.x) + ", " + p.str(t.y) + "), which is not in R");
  auto [l, r] = replay(p, ec.inner);
  if (!(l == ec.a + sum_sy(ec.triples)) || !(r == ec.b + sum_sx(ec.triples)))
    throw ExtError("inner certificate concludes " + p.str(l) + " <= " + p.str(r) +
                   ", not the displayed inequality");
  return {ec.a, ec.b};
}

ExtCertificate ext_from(const Certificate& c) { return {c.lhs(), c.rhs(), {}, c}; }

ExtCertificate ext_canonical(const Expr& x, const Expr& y) {
  return {x, y, {{Expr::one(), x, y}}, Certificate::refl(x + y)};
}

ExtCertificate ext_add(const ExtCertificate& ec, const Expr& c) {
  return {ec.a + c, ec.b + c, ec.triples, Certificate::add(ec.inner, c)};
}

ExtCertificate ext_mul(const ExtCertificate& ec, const Expr& c) {
  ExtCertificate out{ec.a * c, ec.b * c, ec.triples, Certificate::mul(ec.inner, c)};
  for (auto& t : out.triples) t.s = t.s * c;
  return out;
}

ExtCertificate ext_trans(const ExtCertificate& first, const ExtCertificate& second) {
  if (!(first.b == second.a)) throw ExtError("extension certificates do not chain");
  ExtCertificate out{first.a, second.b, first.triples, {}};
  out.triples.insert(out.triples.end(), second.triples.begin(), second.triples.end());
  Certificate l = Certificate::add(first.inner, sum_sy(second.triples));
  Certificate r = Certificate::add(second.inner, sum_sx(first.triples));
  out.inner = Certificate::trans(l, r);
  return out;
}

namespace {

void validate_rf(const Presentation& p, const RfSpec& f) {
  if (f.values.size() != f.subgens.size()) throw ExtError("R_f spec needs one value per sub-generator");
  for (const auto& v : f.values)
    if (v < 0) throw ExtError("R_f values must be nonnegative");
  for (const auto& r : p.relations) {
    auto l = eval_sub(f, r.lhs), h = eval_sub(f, r.rhs);
    if (l && h && *l > *h) throw ExtError("f is not monotone on relation " + p.str(r.lhs) + " <= " + p.str(r.rhs));
  }
}

// Candidate R_f pairs: c*M for c in 0..4 and M a product of sub-generators of
// degree <= d, ordered pairs with f(x) <= f(y).
std::vector<Relation> rf_pairs(const RfSpec& f, std::uint64_t d) {
  std::vector<Expr> pool;
  MonomialSet all;
  for (const auto& mono : all.enumerate(f.subgens.size(), d)) {
    Expr prod = Expr::one();
    const auto& m = mono.terms()[0].mono;
    for (std::size_t i = 0; i < f.subgens.size(); ++i) prod *= f.subgens[i].pow(m.exponent(i));
    for (Coef c = 1; c <= 4; ++c) pool.push_back(prod.scaled(c));
  }
  pool.push_back(Expr::zero());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::vector<Relation> out;
  for (const auto& x : pool)
    for (const auto& y : pool) {
      if (x == y) continue;
      auto fx = eval_sub(f, x), fy = eval_sub(f, y);
      if (fx && fy && *fx <= *fy) out.push_back({x, y});
    }
  return out;
}

}  // namespace

ExtVerdict check_ext(const Presentation& p, const ExtRelations& R, const Expr& a, const Expr& b,
                     const ExtOptions& opt) {
  opt.budget.validate();
  if (R.rf) validate_rf(p, *R.rf);
  ExtVerdict v;
  auto done = [&](ExtCertificate ec) {
    replay_ext(p, R, ec);
    v.kind = Verdict::Kind::Holds;
    v.cert = std::move(ec);
    return v;
  };
  if (auto c = prove(p, a, b, opt.budget)) return done(ext_from(*c));
  if (R.contains(a, b)) return done(ext_canonical(a, b));
  std::vector<Relation> cands = R.pairs;
  if (R.rf) {
    auto more = rf_pairs(*R.rf, opt.pair_degree);
    cands.insert(cands.end(), more.begin(), more.end());
  }
  MonomialSet all;
  auto mults = all.enumerate(p.arity(), opt.multiplier_degree);
  for (const auto& s : mults)
    for (const auto& r : cands) {
      if (auto c = prove(p, a + s * r.rhs, b + s * r.lhs, opt.budget))
        return done({a, b, {{s, r.lhs, r.rhs}}, *c});
    }
  return v;
}

std::pair<Expr, Expr> replay_nested(const Presentation& p, const ExtRelations& R1, const ExtRelations& R2,
                                    const NestedExtCertificate& nc) {
  for (const auto& t : nc.outer)
    if (!R2.contains(t.x, t.y))
      throw ExtError("outer triple cites (" + p.str(t.x) + ", " + p.str(t.y) + "), which is not in R2");
  auto [l, r] = replay_ext(p, R1, nc.inner);
  if (!(l == nc.a + sum_sy(nc.outer)) || !(r == nc.b + sum_sx(nc.outer)))
    throw ExtError("inner extension certificate does not match the outer triples");
  return {nc.a, nc.b};
}

ExtCertificate flatten_nested(const NestedExtCertificate& nc) {
  ExtCertificate out{nc.a, nc.b, nc.outer, nc.inner.inner};
  out.triples.insert(out.triples.end(), nc.inner.triples.begin(), nc.inner.triples.end());
  return out;
}

NestedExtCertificate split_union(const ExtCertificate& ec, const ExtRelations& R1) {
  NestedExtCertificate nc;
  nc.a = ec.a;
  nc.b = ec.b;
  std::vector<ExtTriple> in;
  for (const auto& t : ec.triples) (R1.contains(t.x, t.y) ? in : nc.outer).push_back(t);
  nc.inner = {ec.a + sum_sy(nc.outer), ec.b + sum_sx(nc.outer), in, ec.inner};
  return nc;
}

ExtRelations union_of(const ExtRelations& R1, const ExtRelations& R2) {
  if (R1.rf && R2.rf) throw ExtError("cannot unite two R_f specifications");
  ExtRelations u = R1;
  u.pairs.insert(u.pairs.end(), R2.pairs.begin(), R2.pairs.end());
  if (R2.rf) u.rf = R2.rf;
  return u;
}

std::vector<UnionReportEntry> union_factorization_check(const Presentation& p, const ExtRelations& R1,
                                                        const ExtRelations& R2,
                                                        const std::vector<Relation>& goals,
                                                        const ExtOptions& opt) {
  const ExtRelations U = union_of(R1, R2);
  std::vector<UnionReportEntry> out;
  for (const auto& g : goals) {
    UnionReportEntry e{g.lhs, g.rhs};
    auto uv = check_ext(p, U, g.lhs, g.rhs, opt);
    e.union_kind = uv.kind;

    // Nested search: outer n = 0, then one outer triple s*(x, y) from R2.
    std::optional<NestedExtCertificate> nested;
    auto inner0 = check_ext(p, R1, g.lhs, g.rhs, opt);
    if (inner0.cert) {
      nested = NestedExtCertificate{g.lhs, g.rhs, {}, *inner0.cert};
    } else {
      const auto mults = MonomialSet{}.enumerate(p.arity(), opt.multiplier_degree);
      for (const auto& s : mults) {
        for (const auto& r : R2.pairs) {
          auto iv = check_ext(p, R1, g.lhs + s * r.rhs, g.rhs + s * r.lhs, opt);
          if (iv.cert) {
            nested = NestedExtCertificate{g.lhs, g.rhs, {{s, r.lhs, r.rhs}}, *iv.cert};
            break;
          }
        }
        if (nested) break;
      }
    }
    e.nested_kind = nested ? Verdict::Kind::Holds : Verdict::Kind::Unknown;

    bool ok = true;
    try {
      if (uv.cert) {
        auto sp = split_union(*uv.cert, R1);
        replay_nested(p, R1, R2, sp);
        replay_ext(p, U, flatten_nested(sp));
      }
      if (nested) {
        replay_nested(p, R1, R2, *nested);
        auto fl = flatten_nested(*nested);
        replay_ext(p, U, fl);
        replay_nested(p, R1, R2, split_union(fl, R1));
      }
    } catch (const std::exception&) {
      ok = false;
    }
    e.converted = ok && (uv.cert || nested);
    out.push_back(std::move(e));
  }
  return out;
}

ExtCertificate telescoping_schema(const Expr& x, const Expr& y, const Expr& a, const Expr& b, const Expr& s,
                                  const ExtCertificate& base, std::uint64_t n) {
  if (!(base.a == a + s * y) || !(base.b == b + s * x))
    throw ExtError("base certificate must conclude a + s*y <= b + s*x");
  ExtCertificate cur = base;
  Expr A = Expr::one();  // A_j
  for (std::uint64_t j = 0; j < n; ++j) {
    Expr xj1 = x.pow(j + 1);
    ExtCertificate t1 = ext_add(ext_mul(cur, y), a * xj1);
    ExtCertificate t2 = ext_add(ext_mul(base, xj1), b * A * y);
    cur = ext_trans(t1, t2);
    A = A * y + xj1;
  }
  return cur;
}

}  // namespace psr
