#include "psr/localization.hpp"

#include <functional>

#include "psr/separate.hpp"

namespace psr {

Localization::Localization(const Presentation& p, std::vector<Expr> tgens) : p_(p), t_(std::move(tgens)) {
  for (const auto& t : t_)
    if (t.is_zero()) throw LocError("multiplicative set generator is zero");
}

Expr Localization::product(const TWitness& w) const {
  if (w.exps.size() > t_.size()) throw LocError("T-witness has more exponents than T has generators");
  Expr r = Expr::one();
  for (std::size_t i = 0; i < w.exps.size(); ++i) r *= t_[i].pow(w.exps[i]);
  return r;
}

std::vector<std::pair<Expr, TWitness>> Localization::enumerate(std::uint32_t max_total) const {
  std::vector<std::pair<Expr, TWitness>> out;
  std::vector<Expr> seen;
  TWitness w{std::vector<std::uint32_t>(t_.size(), 0)};
  for (std::uint32_t total = 0; total <= max_total; ++total) {
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
      if (i + 1 >= t_.size()) {
        if (!t_.empty()) w.exps[i] = left;
        else if (left != 0) return;
        Expr e = product(w);
        if (std::find(seen.begin(), seen.end(), e) == seen.end()) {
          seen.push_back(e);
          out.push_back({e, w});
        }
        return;
      }
      for (std::uint32_t k = left + 1; k-- > 0;) {
        w.exps[i] = k;
        rec(i + 1, left - k);
      }
      w.exps[i] = 0;
    };
    try {
      rec(0, total);
    } catch (const OverflowError&) {
      break;
    }
  }
  return out;
}

std::optional<TWitness> Localization::membership(const Expr& e, std::uint32_t max_total) const {
  if (e == Expr::one()) return TWitness{std::vector<std::uint32_t>(t_.size(), 0)};
  for (const auto& [x, w] : enumerate(max_total))
    if (x == e) return w;
  return std::nullopt;
}

Fraction Localization::make(const Expr& num, const Expr& den) const {
  if (den.is_zero()) throw LocError("zero denominator");
  auto w = membership(den);
  if (!w) throw LocError("denominator " + p_.str(den) + " is not a product of T's generators");
  return {num, den, *w};
}

namespace {

TWitness sum(const TWitness& a, const TWitness& b) {
  TWitness r{a.exps};
  if (r.exps.size() < b.exps.size()) r.exps.resize(b.exps.size(), 0);
  for (std::size_t i = 0; i < b.exps.size(); ++i) r.exps[i] += b.exps[i];
  return r;
}

}  // namespace

Fraction Localization::add(const Fraction& a, const Fraction& b) const {
  return {a.num * b.den + b.num * a.den, a.den * b.den, sum(a.den_w, b.den_w)};
}

Fraction Localization::mul(const Fraction& a, const Fraction& b) const {
  return {a.num * b.num, a.den * b.den, sum(a.den_w, b.den_w)};
}

namespace {

void check_member(const Localization& L, const Expr& e, const TWitness& w, const char* what) {
  if (!(L.product(w) == e)) throw LocError(std::string(what) + " is not the product its T-witness names");
}

}  // namespace

void Localization::replay_le(const Fraction& a, const Fraction& b, const LocCertificate& c) const {
  check_member(*this, a.den, a.den_w, "denominator");
  check_member(*this, b.den, b.den_w, "denominator");
  check_member(*this, c.r, c.r_w, "r");
  auto [l, h] = replay(p_, c.inner);
  if (!(l == c.r * a.num * b.den) || !(h == c.r * b.num * a.den))
    throw LocError("inner certificate does not conclude r*s1*t2 <= r*s2*t1");
}

void Localization::replay_eq(const Fraction& a, const Fraction& b, const LocCertificate& c) const {
  check_member(*this, a.den, a.den_w, "denominator");
  check_member(*this, b.den, b.den_w, "denominator");
  check_member(*this, c.r, c.r_w, "r");
  if (!(c.r * a.num * b.den == c.r * b.num * a.den)) throw LocError("r*s1*t2 and r*s2*t1 differ");
}

namespace {

// Verified valuations positive on every generator of T: family grid points
// first, then the default valuations.
std::vector<Hom> positive_points(const Presentation& p, const std::vector<Expr>& tgens) {
  std::vector<Hom> cands;
  if (p.family) {
    for (const auto& pt : grid_points(p.family->truncated_box(), 9)) {
      if (!p.family->satisfies_constraints(pt)) continue;
      try {
        Hom f{p.family->valuation_at(pt)};
        if (verify_hom(p, f)) cands.push_back(std::move(f));
      } catch (const std::domain_error&) {
      }
    }
  }
  auto d = default_valuations(p);
  cands.insert(cands.end(), d.begin(), d.end());
  std::vector<Hom> out;
  for (auto& f : cands) {
    bool pos = true;
    for (const auto& t : tgens) pos = pos && eval(f, t) > 0;
    if (pos) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

Localization::EqResult Localization::frac_eq(const Fraction& a, const Fraction& b, std::uint32_t max_r) const {
  EqResult res;
  for (const auto& [r, w] : enumerate(max_r)) {
    if (r * a.num * b.den == r * b.num * a.den) {
      res.kind = EqResult::Kind::Equal;
      res.cert = LocCertificate{r, w, {}};
      return res;
    }
  }
  for (auto& f : positive_points(p_, t_)) {
    if (eval(f, a.num) * eval(f, b.den) != eval(f, b.num) * eval(f, a.den)) {
      res.kind = EqResult::Kind::NotEqual;
      res.hom = std::move(f);
      return res;
    }
  }
  return res;
}

Localization::LeResult Localization::frac_le(const Fraction& a, const Fraction& b, const Budget& budget,
                                             std::uint32_t max_r) const {
  LeResult res;
  for (const auto& [r, w] : enumerate(max_r)) {
    if (auto c = prove(p_, r * a.num * b.den, r * b.num * a.den, budget)) {
      res.kind = Verdict::Kind::Holds;
      res.cert = LocCertificate{r, w, *c};
      return res;
    }
  }
  std::vector<Hom> cands;
  if (p_.family) {
    if (auto s = separate(p_, *p_.family, a.num * b.den, b.num * a.den)) cands.push_back(s->hom);
  }
  for (auto& f : positive_points(p_, t_)) cands.push_back(std::move(f));
  for (auto& f : cands) {
    bool pos = true;
    for (const auto& t : t_) pos = pos && eval(f, t) > 0;
    if (pos && eval(f, a.num) * eval(f, b.den) > eval(f, b.num) * eval(f, a.den)) {
      res.kind = Verdict::Kind::Refuted;
      res.hom = std::move(f);
      return res;
    }
  }
  return res;
}

LocCertificate Localization::swap_representatives(const Fraction& a, const Fraction& a2,
                                                  const LocCertificate& qa, const Fraction& b,
                                                  const Fraction& b2, const LocCertificate& qb,
                                                  const LocCertificate& c) const {
  replay_eq(a, a2, qa);
  replay_eq(b, b2, qb);
  replay_le(a, b, c);
  // r' = q1 q2 t1 t2 r, and the old inequality times q1 q2 t1' t2'.
  LocCertificate out;
  out.r = qa.r * qb.r * a.den * b.den * c.r;
  out.r_w = sum(sum(sum(sum(qa.r_w, qb.r_w), a.den_w), b.den_w), c.r_w);
  out.inner = Certificate::mul(c.inner, qa.r * qb.r * a2.den * b2.den);
  return out;
}

LocCertificate Localization::trans(const Fraction& a, const Fraction& b, const Fraction& c,
                                   const LocCertificate& ab, const LocCertificate& bc) const {
  LocCertificate out;
  out.r = ab.r * bc.r * b.den;
  out.r_w = sum(sum(ab.r_w, bc.r_w), b.den_w);
  out.inner = Certificate::trans(Certificate::mul(ab.inner, bc.r * c.den), Certificate::mul(bc.inner, ab.r * a.den));
  return out;
}

Localization::PowerUniversality Localization::power_universality(const Fraction& f, const PowerUniversalEntry& ps,
                                                                 const PowerUniversalEntry& pt,
                                                                 const Expr& u) const {
  if (!(ps.x == f.num) || !(pt.x == f.den)) throw LocError("power universal entries do not match s and t");
  PowerUniversality out;
  out.K = ps.k + pt.k;
  TWitness one{std::vector<std::uint32_t>(t_.size(), 0)};
  out.dom = {Expr::one(), one, Certificate::trans(ps.dom, Certificate::mul(pt.inv, u.pow(ps.k)))};
  out.inv = {Expr::one(), one, Certificate::trans(pt.dom, Certificate::mul(ps.inv, u.pow(pt.k)))};
  return out;
}

void verify_loc_witness(const Localization& L, const LocAsymptoticWitness& w, std::uint64_t horizon) {
  if (w.horizon_only) throw WitnessError("horizon evidence carries no asymptotic claim");
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    const LocEntry* e = nullptr;
    for (const auto& d : w.entries)
      if (n % d.modulus == d.residue) e = &d;
    if (!e) throw WitnessError("localized witness has no entry for n=" + std::to_string(n));
    if (!(L.product(e->r_w) == e->r)) throw LocError("r is not the product its T-witness names");
    auto [l, h] = replay(L.presentation(), instantiate(e->schema, n));
    if (!(l == e->r * w.y.pow(n)) || !(h == e->r * w.u.pow(e->K) * w.x.pow(n)))
      throw WitnessError("localized instance n=" + std::to_string(n) + " has the wrong conclusion");
  }
}

LocAsymptoticWitness lift_asymptotic(const AsymptoticWitness& w) {
  if (!w.claims_asymptotic()) throw WitnessError("horizon evidence carries no asymptotic claim");
  LocAsymptoticWitness out{w.u, w.x, w.y, {}, false};
  for (const auto& e : w.entries) out.entries.push_back({e.residue, e.modulus, e.K, Expr::one(), {}, e.schema});
  return out;
}

AsymptoticWitness lower_asymptotic(const Localization& L, const LocAsymptoticWitness& w,
                                   const PowerUniversalWitness& pu) {
  if (w.horizon_only) throw WitnessError("horizon evidence carries no asymptotic claim");
  if (!(pu.u == w.u)) throw WitnessError("power universal witness is for a different element");
  DoubledWitness d{w.u, w.x, w.y, {}, false};
  for (const auto& e : w.entries) {
    PowerUniversalEntry pe;
    if (const auto* found = pu.find(e.r)) {
      pe = *found;
    } else if (e.r == Expr::one()) {
      pe = {Expr::one(), 0, Certificate::refl(Expr::one()), Certificate::refl(Expr::one())};
    } else {
      throw WitnessError("no power universal entry for r = " + L.presentation().str(e.r));
    }
    auto node = std::make_shared<SchemaNode>();
    node->kind = SchemaNode::Kind::CancelChain;
    node->children = {e.schema};
    node->s = e.r;
    node->u = w.u;
    node->K = pe.k;
    node->one_le_u = pe.inv;
    node->dom = pe.dom;
    node->Y = IExpr::power(w.y, Index::n());
    node->X = IExpr::power(w.u, Index::constant(static_cast<std::int64_t>(e.K))) * IExpr::power(w.x, Index::n());
    node->idx = Index::m();
    d.entries.push_back({e.residue, e.modulus, e.K, 2 * pe.k, node});
  }
  return flatten(d);
}

}  // namespace psr
