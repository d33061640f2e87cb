#include "psr/suites.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "psr/asymptotic.hpp"
#include "psr/localization.hpp"
#include "psr/order_extension.hpp"
#include "psr/spectrum.hpp"

namespace psr {

namespace {

struct Fact {
  Certificate cert;  // lo <= hi
  Expr lo, hi;
};

class Ctx {
 public:
  Ctx(const Presentation& p, const SuiteOptions& opt) : p(p), opt(opt), rng(opt.seed) {
    if (p.power_universal) {
      u = *p.power_universal;
      if (auto c = prove(p, Expr::one(), u, opt.budget)) one_le_u = *c;
    }
    if (p.family) {
      for (auto& fp : family_points(p, *p.family, 5, p.family->floor)) homs.push_back(std::move(fp.hom));
    } else {
      homs = default_valuations(p);
    }
  }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

  Expr monomial_sample() {
    std::vector<std::uint32_t> e(p.arity(), 0);
    std::uint32_t left = 2;
    for (auto& x : e) {
      x = static_cast<std::uint32_t>(below(left + 1));
      left -= x;
    }
    return Expr::monomial(Monomial(e));
  }

  /// Nonzero, one or two terms, degree <= 2, coefficients <= 2.
  Expr sample() {
    Expr e;
    const auto terms = 1 + below(2);
    for (std::uint64_t i = 0; i < terms; ++i) e += monomial_sample().scaled(1 + below(2));
    return e;
  }

  Fact fact() {
    if (p.relations.empty()) {
      Coef n = below(3), m = n + below(3);
      return {Certificate::nat(n, m), Expr::constant(n), Expr::constant(m)};
    }
    Certificate c = Certificate::base(p, below(p.relations.size()));
    if (below(2)) c = Certificate::mul(c, sample());
    if (below(2)) c = Certificate::add(c, sample());
    return {c, c.lhs(), c.rhs()};
  }

  std::optional<PowerUniversalEntry> pu(const Expr& s) {
    for (const auto& e : pu_cache)
      if (e.x == s) return e;
    auto w = check_power_universal(p, u, {s}, opt.budget, 8);
    if (!w) return std::nullopt;
    pu_cache.push_back(w->entries.front());
    return w->entries.front();
  }

  /// Witnesses x >~ y: lifts of facts plus whatever check_asymptotic finds
  /// between pairs of generators.
  const std::vector<AsymptoticWitness>& witnesses() {
    if (!pool_ready) {
      pool_ready = true;
      for (std::size_t i = 0; i < opt.samples; ++i) {
        Fact f = fact();
        pool.push_back(lift(u, f.cert));
      }
      AsymOptions ao;
      ao.budget = opt.budget;
      ao.refute = false;
      for (std::size_t i = 0; i < p.arity() && i < 3; ++i)
        for (std::size_t j = 0; j < p.arity() && j < 3; ++j) {
          if (i == j) continue;
          auto r = check_asymptotic(p, u, Expr::generator(i), Expr::generator(j), ao);
          if (r.kind == AsymResult::Kind::Witness) pool.push_back(*r.witness);
        }
    }
    return pool;
  }

  /// f(x) >= f(y) for every sampled spectral point.
  bool monotone(const Expr& x, const Expr& y) const {
    for (const auto& f : homs)
      if (eval(f, x) < eval(f, y)) return false;
    return true;
  }

  const Presentation& p;
  const SuiteOptions& opt;
  std::mt19937_64 rng;
  Expr u;
  Certificate one_le_u;
  std::vector<Hom> homs;
  std::vector<PowerUniversalEntry> pu_cache;
  std::vector<AsymptoticWitness> pool;
  bool pool_ready = false;
};

class Recorder {
 public:
  explicit Recorder(std::string name) { r_.name = std::move(name); }
  void ok() { ++r_.checked; }
  void fail(const std::string& why) {
    if (r_.detail.empty()) r_.detail = why;
    failed_ = true;
  }
  void check(bool cond, const std::string& why) { cond ? ok() : fail(why); }
  void truncated() { ++truncated_; }
  SuiteResult finish() {
    r_.passed = !failed_ && r_.checked > 0;
    if (!failed_ && r_.checked == 0 && r_.detail.empty()) r_.detail = "no case could be constructed";
    if (!failed_ && truncated_ > 0)
      r_.detail = std::to_string(truncated_) + " claims replayed only up to their last n with uint64 coefficients";
    return r_;
  }

 private:
  SuiteResult r_;
  bool failed_ = false;
  std::size_t truncated_ = 0;
};

using SuiteFn = std::function<void(Ctx&, Recorder&)>;

std::string claim(const Presentation& p, const AsymptoticWitness& w) {
  return p.str(w.x) + " >~ " + p.str(w.y);
}

/// Largest n <= limit whose conclusion y^n <= u^{k_n} x^n fits in uint64
/// coefficients.
std::uint64_t representable(const AsymptoticWitness& w, std::uint64_t limit) {
  for (std::uint64_t n = 1; n <= limit; ++n) {
    try {
      (void)w.y.pow(n);
      (void)(w.u.pow(w.k_at(n)) * w.x.pow(n));
    } catch (const OverflowError&) {
      return n - 1;
    }
  }
  return limit;
}

void verify_claim(Ctx& cx, Recorder& r, const AsymptoticWitness& w, std::uint64_t horizon,
                  std::optional<std::uint64_t> max_k = std::nullopt) {
  const auto h = representable(w, horizon);
  if (h < horizon) r.truncated();
  verify_witness(cx.p, w, h);
  if (max_k && w.max_K() > *max_k) {
    r.fail(claim(cx.p, w) + ": envelope " + std::to_string(w.max_K()) + " exceeds " + std::to_string(*max_k));
    return;
  }
  r.check(cx.monotone(w.x, w.y), "a spectral point violates " + claim(cx.p, w));
}

// ---------------------------------------------------------------- asymptotic

void asym_lift(Ctx& cx, Recorder& r) {
  for (std::size_t i = 0; i < cx.opt.samples; ++i) {
    Fact f = cx.fact();
    verify_claim(cx, r, lift(cx.u, f.cert), 12, 0);
  }
}

void asym_trans(Ctx& cx, Recorder& r) {
  for (const auto& w1 : cx.witnesses()) {
    // y >~ z for z the leading term of y, then x >~ z.
    const Term& lead = w1.y.terms().empty() ? Term{} : w1.y.terms().back();
    if (w1.y.is_zero()) continue;
    Expr z = Expr::monomial(lead.mono, lead.coef);
    AsymptoticWitness w2 = lift(cx.u, Certificate::weaken(z, w1.y.minus(z)));
    AsymptoticWitness w = compose_asymptotic(w1, w2);
    verify_claim(cx, r, w, 12, w1.max_K() + w2.max_K());
  }
}

void asym_congruence(Ctx& cx, Recorder& r) {
  if (!cx.one_le_u.valid()) {
    r.fail("no certificate of 1 <= u within budget");
    return;
  }
  for (const auto& w : cx.witnesses()) {
    Expr z = cx.sample();
    verify_claim(cx, r, mul_congruence(w, z), 12, w.max_K());
    verify_claim(cx, r, add_congruence(w, z, cx.one_le_u), 6, w.max_K());
  }
}

void asym_power_universal(Ctx& cx, Recorder& r) {
  for (std::size_t i = 0; i < cx.opt.samples; ++i) {
    Expr s = cx.sample();
    auto e = cx.pu(s);
    if (!e) continue;
    Expr uk = cx.u.pow(e->k);
    verify_claim(cx, r, lift(cx.u, e->dom), 12, 0);
    verify_claim(cx, r, lift(cx.u, e->inv), 12, 0);
    r.check(e->dom.lhs() == s && e->dom.rhs() == uk && e->inv.rhs() == uk * s, "power universal entry mismatch");
  }
}

void asym_cancel(Ctx& cx, Recorder& r) {
  for (std::size_t i = 0; i < cx.opt.samples; ++i) {
    Fact f = cx.fact();
    Expr s = cx.sample();
    auto e = cx.pu(s);
    if (!e) continue;
    AsymptoticWitness w = cancel_factor(cx.p, s, f.hi, f.lo, Certificate::mul(f.cert, s), *e, cx.u);
    verify_claim(cx, r, w, 12, 2 * e->k);
  }
}

void asym_small_factors(Ctx& cx, Recorder& r) {
  for (std::size_t i = 0; i < cx.opt.samples; ++i) {
    Fact f = cx.fact();
    Expr t = cx.sample();
    auto e = cx.pu(t);
    if (!e) continue;
    Schema fam = schema_mul(schema_pow(f.cert, Index::n()), IExpr::of(t));
    AsymptoticWitness w = small_factors(cx.p, t, t, f.hi, f.lo, fam, *e, *e, cx.u);
    verify_claim(cx, r, w, 12, 2 * e->k);
  }
}

void asym_flatten(Ctx& cx, Recorder& r) {
  if (!cx.one_le_u.valid()) {
    r.fail("no certificate of 1 <= u within budget");
    return;
  }
  for (const auto& w : cx.witnesses()) {
    if (w.modulus() != 1) continue;
    // (n, m): y^{nm} <= u^K x^{nm} <= u^{Km} x^{nm} = (u^K x^n)^m.
    const auto K = static_cast<std::int64_t>(w.max_K());
    const auto& e = w.entries.front();
    Schema inner = schema_trans(
        {schema_reindex(e.schema, Index::nm(), Index::constant(0)),
         schema_mul(schema_pow(cx.one_le_u, Index{0, K, 0, -K, 1}),
                    IExpr::power(cx.u, Index::constant(K)) * IExpr::power(w.x, Index::nm()))});
    DoubledWitness d{w.u, w.x, w.y, {{0, 1, w.max_K(), 0, inner}}, false};
    const auto limit = representable(w, 24);
    if (limit < 24) r.truncated();
    verify_doubled(cx.p, d, limit);
    verify_claim(cx, r, flatten(d), 12, w.max_K());
  }
  DoubledWitness h;
  h.horizon_only = true;
  try {
    flatten(h);
    r.fail("flatten accepted horizon-only input");
  } catch (const WitnessError&) {
    r.ok();
  }
}

void asym_conversion(Ctx& cx, Recorder& r) {
  if (!cx.one_le_u.valid()) {
    r.fail("no certificate of 1 <= u within budget");
    return;
  }
  const Expr u = cx.u;
  for (const auto& w : cx.witnesses()) {
    // u <= u + 1 with k = 1, and u <= u^2 with k = 2.
    verify_claim(cx, r, convert_power_universal(w, u + Expr::one(), 1, Certificate::weaken(u, Expr::one())), 12,
                 w.max_K());
    verify_claim(cx, r, convert_power_universal(w, u, 2, Certificate::mul(cx.one_le_u, u)), 12, 2 * w.max_K());
  }
}

// ---------------------------------------------------------------- R-extension

ExtRelations random_pairs(Ctx& cx, std::size_t n) {
  ExtRelations R;
  for (std::size_t i = 0; i < n; ++i) R.pairs.push_back({cx.sample(), cx.sample()});
  return R;
}

void ext_base(Ctx& cx, Recorder& r) {
  const ExtRelations none;
  for (std::size_t i = 0; i < cx.opt.samples; ++i) {
    Fact f = cx.fact();
    ExtRelations R = random_pairs(cx, 2);
    auto [a, b] = replay_ext(cx.p, R, ext_from(f.cert));
    r.check(a == f.lo && b == f.hi, "n = 0 wrapper changed the conclusion");
    auto v = check_ext(cx.p, none, f.lo, f.hi, {cx.opt.budget});
    r.check(v.kind != Verdict::Kind::Refuted, "check_ext refuted a base-order fact");
    if (v.cert) r.check(v.cert->triples.empty(), "empty R produced triples");
  }
}

void ext_contains(Ctx& cx, Recorder& r) {
  for (std::size_t i = 0; i < cx.opt.samples; ++i) {
    ExtRelations R = random_pairs(cx, 1);
    const auto& pr = R.pairs.front();
    auto [a, b] = replay_ext(cx.p, R, ext_canonical(pr.lhs, pr.rhs));
    r.check(a == pr.lhs && b == pr.rhs, "canonical certificate changed the pair");
    // Citing a pair outside R must be rejected.
    ExtRelations other;
    other.pairs.push_back({pr.lhs + Expr::one(), pr.rhs});
    try {
      replay_ext(cx.p, other, ext_canonical(pr.lhs, pr.rhs));
      r.fail("a triple outside R was accepted");
    } catch (const ExtError&) {
      r.ok();
    }
  }
}

void ext_closure(Ctx& cx, Recorder& r) {
  for (std::size_t i = 0; i < cx.opt.samples; ++i) {
    Expr x = cx.sample(), y = cx.sample(), z = cx.sample(), c = cx.sample();
    ExtRelations R;
    R.pairs = {{x, y}, {y, z}};
    auto xz = ext_trans(ext_canonical(x, y), ext_canonical(y, z));
    auto [a, b] = replay_ext(cx.p, R, xz);
    r.check(a == x && b == z, "transitivity changed the endpoints");
    auto [a2, b2] = replay_ext(cx.p, R, ext_add(xz, c));
    r.check(a2 == x + c && b2 == z + c, "additive congruence changed the endpoints");
    auto [a3, b3] = replay_ext(cx.p, R, ext_mul(xz, c));
    r.check(a3 == x * c && b3 == z * c, "multiplicative congruence changed the endpoints");
    // Mixing a base-order fact into the chain.
    Fact f = cx.fact();
    auto mixed = ext_trans(ext_from(f.cert), ext_canonical(f.hi, x));
    R.pairs.push_back({f.hi, x});
    auto [a4, b4] = replay_ext(cx.p, R, mixed);
    r.check(a4 == f.lo && b4 == x, "mixed chain changed the endpoints");
  }
}

void ext_union(Ctx& cx, Recorder& r) {
  for (std::size_t i = 0; i < cx.opt.samples / 2 + 1; ++i) {
    ExtRelations R1 = random_pairs(cx, 1), R2 = random_pairs(cx, 1);
    std::vector<Relation> goals = {R1.pairs[0], R2.pairs[0]};
    Fact f = cx.fact();
    goals.push_back({f.lo, f.hi});
    // x <=_{R1} y and y <=_{R2} z give x <= z in the union.
    goals.push_back({R1.pairs[0].lhs, R1.pairs[0].rhs + R2.pairs[0].rhs});
    for (const auto& [A, B] : {std::pair{R1, R2}, std::pair{R1, ExtRelations{}}, std::pair{R1, R1}}) {
      for (const auto& e : union_factorization_check(cx.p, A, B, goals, {cx.opt.budget})) {
        const bool any = e.union_kind == Verdict::Kind::Holds || e.nested_kind == Verdict::Kind::Holds;
        if (!any) continue;
        r.check(e.converted, "certificate conversion failed for " + cx.p.str(e.a) + " <= " + cx.p.str(e.b));
      }
    }
  }
}

void ext_finite_support(Ctx& cx, Recorder& r) {
  for (std::size_t i = 0; i < cx.opt.samples; ++i) {
    Expr x = cx.sample(), y = cx.sample(), z = cx.sample();
    ExtRelations R = random_pairs(cx, 3);
    R.pairs.push_back({x, y});
    R.pairs.push_back({y, z});
    auto ec = ext_mul(ext_trans(ext_canonical(x, y), ext_canonical(y, z)), cx.sample());
    ExtRelations used;
    for (const auto& t : ec.triples)
      if (std::find(used.pairs.begin(), used.pairs.end(), Relation{t.x, t.y}) == used.pairs.end())
        used.pairs.push_back({t.x, t.y});
    replay_ext(cx.p, R, ec);
    replay_ext(cx.p, used, ec);
    r.check(used.pairs.size() <= 2, "certificate cites more pairs than it was built from");
  }
}

Rational floor_q(const Rational& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(z);
}

Rational ceil_q(const Rational& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(z);
}

Expr nat_expr(const Rational& q) { return Expr::constant(q.get_num().get_ui()); }

void ext_pinning(Ctx& cx, Recorder& r) {
  if (cx.homs.empty() || cx.p.arity() == 0) {
    if (cx.p.arity() == 0) r.ok();  // S0 = N: every point agrees
    return;
  }
  std::vector<Expr> gens;
  for (std::size_t i = 0; i < cx.p.arity(); ++i) gens.push_back(Expr::generator(i));
  for (std::size_t i = 0; i < cx.opt.samples && i < cx.homs.size(); ++i) {
    const Hom& f = cx.homs[cx.below(cx.homs.size())];
    ExtRelations R;
    R.rf = restrict_to(f, gens);
    Expr x = cx.sample();
    const Coef n = 1 + cx.below(6);
    const Expr nx = x.scaled(n);
    const Rational v = eval(f, nx);
    const Expr lo = nat_expr(floor_q(v)), hi = nat_expr(ceil_q(v));
    replay_ext(cx.p, R, ext_canonical(lo, nx));
    replay_ext(cx.p, R, ext_canonical(nx, hi));
    r.ok();
    // A point g that differs from f on a generator breaks the sandwich.
    for (const auto& g : cx.homs) {
      if (g == f) continue;
      std::size_t j = 0;
      while (j < gens.size() && g.values[j] == f.values[j]) ++j;
      if (j == gens.size()) continue;
      Rational diff = g.values[j] - f.values[j];
      if (diff < 0) diff = -diff;
      const Coef m = ceil_q(Rational(2) / diff).get_num().get_ui();
      const Expr mx = gens[j].scaled(m);
      const Rational fv = eval(f, mx), gv = eval(g, mx);
      const bool broken = gv < floor_q(fv) || gv > ceil_q(fv);
      r.check(broken, "a point differing from f kept the sandwich at " + cx.p.str(mx));
      break;
    }
  }
}

void ext_telescoping(Ctx& cx, Recorder& r) {
  for (std::size_t i = 0; i < cx.opt.samples / 2 + 1; ++i) {
    Expr x = cx.monomial_sample(), y = cx.monomial_sample(), s = cx.sample(), a = cx.sample();
    ExtRelations R;
    R.pairs = {{y, x}};
    // a + s*y <=_R a + s*x
    ExtCertificate base = ext_add(ext_mul(ext_canonical(y, x), s), a);
    Expr A = Expr::one();
    for (std::uint64_t n = 0; n <= 8; ++n) {
      auto ec = telescoping_schema(x, y, a, a, s, base, n);
      auto [l, h] = replay_ext(cx.p, R, ec);
      const bool good = l == a * A + s * y.pow(n + 1) && h == a * A + s * x.pow(n + 1);
      r.check(good, "telescoping level " + std::to_string(n) + " has the wrong conclusion");
      A = A * y + x.pow(n + 1);
    }
  }
}

// ---------------------------------------------------------------- localization

std::vector<Expr> t_generators(const Presentation& p) {
  if (!p.mult_set.empty()) return p.mult_set;
  if (p.arity() == 0) return {Expr::constant(2)};
  std::vector<Expr> out;
  for (std::size_t i = 0; i < p.arity(); ++i) out.push_back(Expr::generator(i));
  return out;
}

void loc_swaps(Ctx& cx, Recorder& r) {
  Localization L(cx.p, t_generators(cx.p));
  const auto ts = L.enumerate(2);
  auto pick = [&]() -> const std::pair<Expr, TWitness>& { return ts[cx.below(ts.size())]; };
  for (std::size_t i = 0; i < cx.opt.swaps; ++i) {
    Fact f = cx.fact();
    const auto& [t, tw] = pick();
    const auto& [q, qw] = pick();
    Fraction a{f.lo, t, tw}, b{f.hi, t, tw};
    LocCertificate c{q, qw, Certificate::mul(f.cert, q * t)};
    L.replay_le(a, b, c);
    // Other representatives of the same fractions.
    const auto& [q1, q1w] = pick();
    const auto& [q2, q2w] = pick();
    Fraction a2 = L.mul(a, {q1, q1, q1w}), b2 = L.mul(b, {q2, q2, q2w});
    auto ea = L.frac_eq(a, a2), eb = L.frac_eq(b, b2);
    if (ea.kind != Localization::EqResult::Kind::Equal || eb.kind != Localization::EqResult::Kind::Equal) {
      r.fail("representatives were not recognized as equal");
      continue;
    }
    L.replay_eq(a, a2, *ea.cert);
    auto c2 = L.swap_representatives(a, a2, *ea.cert, b, b2, *eb.cert, c);
    L.replay_le(a2, b2, c2);
    if (i < 10) {
      auto v = L.frac_le(a2, b2, cx.opt.budget);
      r.check(v.kind != Verdict::Kind::Refuted, "frac_le refuted a swapped representative");
    }
    // Transitivity with a + 1/t >= b.
    Fraction c3{f.hi + Expr::one(), t, tw};
    LocCertificate bc{Expr::one(), {}, Certificate::weaken(f.hi * t, t)};
    L.replay_le(b, c3, bc);
    L.replay_le(a, c3, L.trans(a, b, c3, c, bc));
    r.ok();
  }
}

void loc_round_trip(Ctx& cx, Recorder& r) {
  Localization L(cx.p, t_generators(cx.p));
  const auto ts = L.enumerate(1);
  for (const auto& w : cx.witnesses()) {
    auto lw = lift_asymptotic(w);
    verify_loc_witness(L, lw, 12);
    auto pu1 = check_power_universal(cx.p, cx.u, {Expr::one()}, cx.opt.budget);
    if (!pu1) continue;
    verify_claim(cx, r, lower_asymptotic(L, lw, *pu1), 12, w.max_K() + 2 * pu1->entries[0].k);
    // A nontrivial r in T: multiply every entry by t.
    const auto& [t, tw] = ts[cx.below(ts.size())];
    auto e = cx.pu(t);
    if (!e) continue;
    LocAsymptoticWitness lt = lw;
    for (auto& en : lt.entries) {
      en.r = t;
      en.r_w = tw;
      en.schema = schema_mul(en.schema, IExpr::of(t));
    }
    verify_loc_witness(L, lt, 12);
    PowerUniversalWitness pw{cx.u, cx.one_le_u, {*e}};
    verify_claim(cx, r, lower_asymptotic(L, lt, pw), 12, w.max_K() + 2 * e->k);
  }
  LocAsymptoticWitness h;
  h.horizon_only = true;
  try {
    lower_asymptotic(L, h, {});
    r.fail("lower accepted horizon-only input");
  } catch (const WitnessError&) {
    r.ok();
  }
}

}  // namespace

std::vector<SuiteResult> run_suites(const Presentation& p, const SuiteOptions& opt) {
  const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"asymptotic (i) base order is contained", asym_lift},
      {"asymptotic (ii) transitivity", asym_trans},
      {"asymptotic (ii) congruences", asym_congruence},
      {"asymptotic (iii) u stays power universal", asym_power_universal},
      {"asymptotic (iv) cancellation", asym_cancel},
      {"asymptotic (v) small factors", asym_small_factors},
      {"witness flattening", asym_flatten},
      {"power universal conversion", asym_conversion},
      {"R-extension (i) base order is contained", ext_base},
      {"R-extension (ii) R is contained", ext_contains},
      {"R-extension (iii) semiring closure", ext_closure},
      {"R-extension (iv) union factorization", ext_union},
      {"R-extension (v) finite support", ext_finite_support},
      {"R_f pinning sandwich", ext_pinning},
      {"telescoping schema n <= 8", ext_telescoping},
      {"localization representative swaps", loc_swaps},
      {"localization asymptotic round trip", loc_round_trip},
  };
  std::vector<SuiteResult> out;
  if (!p.power_universal) {
    for (const auto& [name, fn] : suites) out.push_back({name, false, 0, "the presentation declares no power_universal"});
    return out;
  }
  for (const auto& [name, fn] : suites) {
    Ctx cx(p, opt);
    cx.rng.seed(opt.seed ^ std::hash<std::string>{}(name));
    Recorder r(name);
    try {
      fn(cx, r);
    } catch (const std::exception& e) {
      r.fail(e.what());
    }
    out.push_back(r.finish());
  }
  return out;
}

std::string print_suites(const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checked << " checked)";
    if (!r.detail.empty()) os << ": " << r.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace psr
