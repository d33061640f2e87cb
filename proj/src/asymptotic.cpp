#include "psr/asymptotic.hpp"

#include <numeric>

namespace psr {

std::uint64_t Index::at(std::uint64_t n, std::uint64_t m) const {
  __int128 N = n, M = m;
  __int128 v = a * N + b * M + c * N * M + e;
  if (d <= 0 || v < 0 || v % d != 0)
    throw WitnessError("index is not a nonnegative integer at n=" + std::to_string(n) + ", m=" + std::to_string(m));
  return static_cast<std::uint64_t>(v / d);
}

IExpr IExpr::operator*(const IExpr& o) const {
  IExpr r = *this;
  r.factors.insert(r.factors.end(), o.factors.begin(), o.factors.end());
  return r;
}

Expr IExpr::at(std::uint64_t n, std::uint64_t m) const {
  Expr r = Expr::one();
  for (const auto& f : factors) r *= f.base.pow(f.exp.at(n, m));
  return r;
}

namespace {

std::shared_ptr<SchemaNode> node(SchemaNode::Kind k) {
  auto s = std::make_shared<SchemaNode>();
  s->kind = k;
  return s;
}

Coef binomial(std::uint64_t n, std::uint64_t k) {
  Coef r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step.
    __int128 t = static_cast<__int128>(r) * (n - k + i) / i;
    if (t > static_cast<__int128>(~Coef(0))) throw OverflowError("binomial coefficient overflow");
    r = static_cast<Coef>(t);
  }
  return r;
}

Certificate pow_chain(const Certificate& c, std::uint64_t k) {
  if (k == 0) return Certificate::refl(Expr::one());
  const Expr& a = c.lhs();
  const Expr& b = c.rhs();
  std::vector<Certificate> steps;
  for (std::uint64_t j = 0; j < k; ++j) steps.push_back(Certificate::mul(c, a.pow(k - j - 1) * b.pow(j)));
  return Certificate::chain(steps);
}

Certificate chain_or_throw(const std::vector<Certificate>& steps) {
  try {
    return Certificate::chain(steps);
  } catch (const std::invalid_argument& e) {
    throw WitnessError(std::string("schema does not compose: ") + e.what());
  }
}

Certificate run(const SchemaNode& s, std::uint64_t n, std::uint64_t m) {
  using K = SchemaNode::Kind;
  switch (s.kind) {
    case K::Cert:
      return s.cert;
    case K::Refl:
      return Certificate::refl(s.operand.at(n, m));
    case K::Pow:
      return pow_chain(s.cert, s.idx.at(n, m));
    case K::Mul:
      return Certificate::mul(instantiate(s.children.at(0), n, m), s.operand.at(n, m));
    case K::Add:
      return Certificate::add(instantiate(s.children.at(0), n, m), s.operand.at(n, m));
    case K::Trans: {
      std::vector<Certificate> parts;
      for (const auto& c : s.children) parts.push_back(instantiate(c, n, m));
      return chain_or_throw(parts);
    }
    case K::Table:
      if (n >= s.table.size()) throw WitnessError("no certificate for n=" + std::to_string(n));
      return s.table[n];
    case K::Reindex:
      return instantiate(s.children.at(0), s.idx.at(n, m), s.idx2.at(n, m));
    case K::Binomial: {
      const AsymptoticWitness& w = *s.inner;
      const Expr ux = s.u.pow(s.K);
      std::vector<Expr> before(n + 1), after(n + 1);
      for (std::uint64_t j = 0; j <= n; ++j) {
        Expr c = Expr::constant(binomial(n, j)) * s.z.pow(n - j);
        before[j] = c * w.y.pow(j);
        after[j] = c * ux * w.x.pow(j);
      }
      std::vector<Certificate> steps;
      for (std::uint64_t j = 0; j <= n; ++j) {
        std::uint64_t kj = w.k_at(j);
        if (kj > s.K) throw WitnessError("binomial padding below the inner envelope");
        Certificate pad = Certificate::mul(pow_chain(s.one_le_u, s.K - kj), s.u.pow(kj) * w.x.pow(j));
        Certificate term = chain_or_throw({w.instantiate(j), pad});
        Expr rest = Expr::zero();
        for (std::uint64_t i = 0; i <= n; ++i)
          if (i != j) rest += i < j ? after[i] : before[i];
        steps.push_back(Certificate::add(
            Certificate::mul(term, Expr::constant(binomial(n, j)) * s.z.pow(n - j)), rest));
      }
      return chain_or_throw(steps);
    }
    case K::CancelChain: {
      const std::uint64_t L = s.idx.at(n, m);
      const Expr Y = s.Y.at(n, m), X = s.X.at(n, m);
      const Expr uk = s.u.pow(s.K);
      Certificate c = instantiate(s.children.at(0), n, m);
      if (!(c.lhs() == s.s * Y) || !(c.rhs() == s.s * X))
        throw WitnessError("cancellation premise does not match s*Y <= s*X");
      std::vector<Certificate> steps{Certificate::mul(s.one_le_u, Y.pow(L))};
      for (std::uint64_t j = 0; j < L; ++j) steps.push_back(Certificate::mul(c, uk * Y.pow(L - 1 - j) * X.pow(j)));
      steps.push_back(Certificate::mul(s.dom, uk * X.pow(L)));
      return chain_or_throw(steps);
    }
  }
  throw WitnessError("unknown schema node");
}

}  // namespace

Schema schema_cert(Certificate c) {
  auto s = node(SchemaNode::Kind::Cert);
  s->cert = std::move(c);
  return s;
}

Schema schema_refl(IExpr e) {
  auto s = node(SchemaNode::Kind::Refl);
  s->operand = std::move(e);
  return s;
}

Schema schema_pow(Certificate c, Index k) {
  auto s = node(SchemaNode::Kind::Pow);
  s->cert = std::move(c);
  s->idx = k;
  return s;
}

Schema schema_mul(Schema child, IExpr e) {
  auto s = node(SchemaNode::Kind::Mul);
  s->children = {std::move(child)};
  s->operand = std::move(e);
  return s;
}

Schema schema_add(Schema child, IExpr e) {
  auto s = node(SchemaNode::Kind::Add);
  s->children = {std::move(child)};
  s->operand = std::move(e);
  return s;
}

Schema schema_trans(std::vector<Schema> children) {
  auto s = node(SchemaNode::Kind::Trans);
  s->children = std::move(children);
  return s;
}

Schema schema_table(std::vector<Certificate> certs) {
  auto s = node(SchemaNode::Kind::Table);
  s->table = std::move(certs);
  return s;
}

Schema schema_reindex(Schema child, Index n, Index m) {
  auto s = node(SchemaNode::Kind::Reindex);
  s->children = {std::move(child)};
  s->idx = n;
  s->idx2 = m;
  return s;
}

Certificate instantiate(const Schema& s, std::uint64_t n, std::uint64_t m) {
  if (!s) throw WitnessError("empty schema");
  try {
    return run(*s, n, m);
  } catch (const OverflowError& e) {
    throw WitnessError(std::string("overflow while instantiating schema: ") + e.what());
  }
}

const char* kind_name(AsymptoticWitness::Kind k) {
  switch (k) {
    case AsymptoticWitness::Kind::ConstantK: return "ConstantK";
    case AsymptoticWitness::Kind::Periodic: return "Periodic";
    case AsymptoticWitness::Kind::Horizon: return "Horizon";
  }
  return "?";
}

std::uint64_t AsymptoticWitness::modulus() const { return entries.empty() ? 1 : entries.front().modulus; }

const EnvelopeEntry& AsymptoticWitness::entry_for(std::uint64_t n) const {
  for (const auto& e : entries)
    if (e.modulus != 0 && n % e.modulus == e.residue) return e;
  throw WitnessError("no envelope entry for n=" + std::to_string(n));
}

std::uint64_t AsymptoticWitness::k_at(std::uint64_t n) const {
  if (kind == Kind::Horizon) {
    for (const auto& h : horizon)
      if (h.n == n) return h.k;
    throw WitnessError("horizon evidence does not cover n=" + std::to_string(n));
  }
  return entry_for(n).K;
}

std::uint64_t AsymptoticWitness::max_K() const {
  std::uint64_t k = 0;
  for (const auto& e : entries) k = std::max(k, e.K);
  for (const auto& h : horizon) k = std::max(k, h.k);
  return k;
}

Certificate AsymptoticWitness::instantiate(std::uint64_t n) const {
  if (kind == Kind::Horizon) {
    for (const auto& h : horizon)
      if (h.n == n) return h.cert;
    throw WitnessError("horizon evidence does not cover n=" + std::to_string(n));
  }
  return psr::instantiate(entry_for(n).schema, n, 0);
}

void verify_witness(const Presentation& p, const AsymptoticWitness& w, std::uint64_t horizon) {
  auto check = [&](std::uint64_t n, std::uint64_t k, const Certificate& c) {
    auto [lhs, rhs] = replay(p, c);
    if (!(lhs == w.y.pow(n)) || !(rhs == w.u.pow(k) * w.x.pow(n)))
      throw WitnessError("instance n=" + std::to_string(n) + " concludes " + p.str(lhs) + " <= " + p.str(rhs));
  };
  if (w.kind == AsymptoticWitness::Kind::Horizon) {
    for (const auto& h : w.horizon) check(h.n, h.k, h.cert);
    return;
  }
  if (w.entries.empty()) throw WitnessError("witness has no envelope entries");
  const auto mod = w.modulus();
  if (w.entries.size() != mod) throw WitnessError("envelope entries do not cover every residue");
  for (std::uint64_t r = 0; r < mod; ++r) {
    const auto& e = w.entry_for(r);
    if (e.modulus != mod) throw WitnessError("envelope entries disagree on the modulus");
  }
  for (std::uint64_t n = 0; n <= horizon; ++n) check(n, w.k_at(n), w.instantiate(n));
}

const PowerUniversalEntry* PowerUniversalWitness::find(const Expr& x) const {
  for (const auto& e : entries)
    if (e.x == x) return &e;
  return nullptr;
}

std::optional<PowerUniversalWitness> check_power_universal(const Presentation& p, const Expr& u,
                                                           const std::vector<Expr>& coverage,
                                                           const Budget& b, std::uint64_t max_k) {
  if (u.is_zero()) throw std::invalid_argument("power universal element must be nonzero");
  PowerUniversalWitness w;
  w.u = u;
  auto one = prove(p, Expr::one(), u, b);
  if (!one) return std::nullopt;
  w.one_le_u = *one;
  for (const auto& x : coverage) {
    if (x.is_zero()) throw std::invalid_argument("coverage elements must be nonzero");
    bool found = false;
    for (std::uint64_t k = 0; k <= max_k && !found; ++k) {
      Expr uk = u.pow(k);
      auto dom = prove(p, x, uk, b);
      if (!dom) continue;
      auto inv = prove(p, Expr::one(), uk * x, b);
      if (!inv) continue;
      w.entries.push_back({x, k, *dom, *inv});
      found = true;
    }
    if (!found) return std::nullopt;
  }
  return w;
}

AsymptoticWitness lift(const Expr& u, const Certificate& y_le_x) {
  AsymptoticWitness w;
  w.kind = AsymptoticWitness::Kind::ConstantK;
  w.u = u;
  w.x = y_le_x.rhs();
  w.y = y_le_x.lhs();
  w.entries.push_back({0, 1, 0, schema_pow(y_le_x, Index::n())});
  return w;
}

namespace {

AsymptoticWitness::Kind kind_for(std::uint64_t modulus) {
  return modulus > 1 ? AsymptoticWitness::Kind::Periodic : AsymptoticWitness::Kind::ConstantK;
}

void require_claim(const AsymptoticWitness& w) {
  if (!w.claims_asymptotic()) throw WitnessError("horizon evidence carries no asymptotic claim");
}

}  // namespace

AsymptoticWitness convert_power_universal(const AsymptoticWitness& w, const Expr& u1, std::uint64_t k,
                                          const Certificate& u2_le_u1k) {
  if (!(u2_le_u1k.lhs() == w.u) || !(u2_le_u1k.rhs() == u1.pow(k)))
    throw WitnessError("conversion certificate must conclude u2 <= u1^k");
  AsymptoticWitness out = w;
  out.u = u1;
  for (auto& e : out.entries) {
    e.schema = schema_trans({e.schema, schema_mul(schema_pow(u2_le_u1k, Index::constant(static_cast<std::int64_t>(e.K))),
                                                  IExpr::power(w.x, Index::n()))});
    e.K *= k;
  }
  for (auto& h : out.horizon) {
    h.cert = chain_or_throw({h.cert, Certificate::mul(pow_chain(u2_le_u1k, h.k), w.x.pow(h.n))});
    h.k *= k;
  }
  return out;
}

AsymptoticWitness compose_asymptotic(const AsymptoticWitness& w1, const AsymptoticWitness& w2) {
  require_claim(w1);
  require_claim(w2);
  if (!(w1.u == w2.u)) throw WitnessError("witnesses use different power universal elements");
  if (!(w1.y == w2.x)) throw WitnessError("witnesses do not chain");
  const std::uint64_t mod = std::lcm(w1.modulus(), w2.modulus());
  AsymptoticWitness out;
  out.kind = kind_for(mod);
  out.u = w1.u;
  out.x = w1.x;
  out.y = w2.y;
  for (std::uint64_t r = 0; r < mod; ++r) {
    const auto& e1 = w1.entry_for(r);
    const auto& e2 = w2.entry_for(r);
    Schema s = schema_trans(
        {e2.schema, schema_mul(e1.schema, IExpr::power(w1.u, Index::constant(static_cast<std::int64_t>(e2.K))))});
    out.entries.push_back({r, mod, e1.K + e2.K, s});
  }
  return out;
}

AsymptoticWitness add_congruence(const AsymptoticWitness& w, const Expr& z, const Certificate& one_le_u) {
  require_claim(w);
  if (z.is_zero()) return w;
  if (!(one_le_u.lhs() == Expr::one()) || !(one_le_u.rhs() == w.u))
    throw WitnessError("padding certificate must conclude 1 <= u");
  auto s = node(SchemaNode::Kind::Binomial);
  s->inner = std::make_shared<AsymptoticWitness>(w);
  s->z = z;
  s->K = w.max_K();
  s->u = w.u;
  s->one_le_u = one_le_u;
  AsymptoticWitness out;
  out.kind = AsymptoticWitness::Kind::ConstantK;
  out.u = w.u;
  out.x = w.x + z;
  out.y = w.y + z;
  out.entries.push_back({0, 1, s->K, s});
  return out;
}

AsymptoticWitness mul_congruence(const AsymptoticWitness& w, const Expr& z) {
  require_claim(w);
  AsymptoticWitness out = w;
  out.x = w.x * z;
  out.y = w.y * z;
  for (auto& e : out.entries) e.schema = schema_mul(e.schema, IExpr::power(z, Index::n()));
  return out;
}

AsymptoticWitness cancel_factor(const Presentation& p, const Expr& s, const Expr& x, const Expr& y,
                                const Certificate& sy_le_sx, const PowerUniversalEntry& pu_s,
                                const Expr& u) {
  if (s.is_zero()) throw std::invalid_argument("cancelled factor must be nonzero");
  auto [l, r] = replay(p, sy_le_sx);
  if (!(l == s * y) || !(r == s * x)) throw WitnessError("premise must conclude s*y <= s*x");
  if (!(pu_s.x == s)) throw WitnessError("power universal entry is not for s");
  auto node_ = node(SchemaNode::Kind::CancelChain);
  node_->children = {schema_cert(sy_le_sx)};
  node_->s = s;
  node_->u = u;
  node_->K = pu_s.k;
  node_->one_le_u = pu_s.inv;
  node_->dom = pu_s.dom;
  node_->X = IExpr::of(x);
  node_->Y = IExpr::of(y);
  node_->idx = Index::n();
  AsymptoticWitness out;
  out.kind = AsymptoticWitness::Kind::ConstantK;
  out.u = u;
  out.x = x;
  out.y = y;
  out.entries.push_back({0, 1, 2 * pu_s.k, node_});
  return out;
}

AsymptoticWitness small_factors(const Presentation& p, const Expr& s, const Expr& t, const Expr& x,
                                const Expr& y, const Schema& family, const PowerUniversalEntry& pu_s,
                                const PowerUniversalEntry& pu_t, const Expr& u, std::uint64_t horizon) {
  if (s.is_zero() || t.is_zero()) throw std::invalid_argument("factors must be nonzero");
  if (!(pu_s.x == s) || !(pu_t.x == t)) throw WitnessError("power universal entries do not match s and t");
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    auto [l, r] = replay(p, instantiate(family, n));
    if (!(l == t * y.pow(n)) || !(r == s * x.pow(n)))
      throw WitnessError("family instance n=" + std::to_string(n) + " is not t*y^n <= s*x^n");
  }
  const std::uint64_t k = pu_t.k, lk = pu_s.k;
  const IExpr uk = IExpr::power(u, Index::constant(static_cast<std::int64_t>(k)));
  Schema sch = schema_trans({
      schema_mul(schema_cert(pu_t.inv), IExpr::power(y, Index::n())),
      schema_mul(family, uk),
      schema_mul(schema_cert(pu_s.dom), uk * IExpr::power(x, Index::n())),
  });
  AsymptoticWitness out;
  out.kind = AsymptoticWitness::Kind::ConstantK;
  out.u = u;
  out.x = x;
  out.y = y;
  out.entries.push_back({0, 1, k + lk, sch});
  return out;
}

void verify_doubled(const Presentation& p, const DoubledWitness& w, std::uint64_t limit) {
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const DoubledEntry* e = nullptr;
    for (const auto& d : w.entries)
      if (n % d.modulus == d.residue) e = &d;
    if (!e) throw WitnessError("doubled witness has no entry for n=" + std::to_string(n));
    for (std::uint64_t m = 1; n * m <= limit; ++m) {
      auto [l, r] = replay(p, instantiate(e->inner, n, m));
      if (!(l == w.y.pow(n * m)) || !(r == w.u.pow(e->L) * (w.u.pow(e->K) * w.x.pow(n)).pow(m)))
        throw WitnessError("inner instance (" + std::to_string(n) + ", " + std::to_string(m) + ") concludes " +
                           p.str(l) + " <= " + p.str(r));
    }
  }
}

AsymptoticWitness flatten(const DoubledWitness& w) {
  if (w.horizon_only) throw WitnessError("horizon evidence carries no asymptotic claim");
  if (w.entries.empty()) throw WitnessError("doubled witness has no entries");
  AsymptoticWitness out;
  out.kind = kind_for(w.entries.front().modulus);
  out.u = w.u;
  out.x = w.x;
  out.y = w.y;
  // With an inner envelope constant in m, l + m*K is least at m = 1.
  for (const auto& e : w.entries)
    out.entries.push_back({e.residue, e.modulus, e.K + e.L, schema_reindex(e.inner, Index::n(), Index::constant(1))});
  return out;
}

namespace {

std::optional<AsymptoticWitness> periodic_trick(const Presentation& p, const Expr& u, const Expr& x,
                                                const Expr& y, const AsymOptions& opt) {
  for (std::uint64_t per = 2; per <= opt.max_period; ++per) {
    auto cp = prove(p, y.pow(per), x.pow(per), opt.budget);
    if (!cp) continue;
    AsymptoticWitness w;
    w.kind = AsymptoticWitness::Kind::Periodic;
    w.u = u;
    w.x = x;
    w.y = y;
    const auto P = static_cast<std::int64_t>(per);
    w.entries.push_back({0, per, 0, schema_pow(*cp, Index::quotient(0, P))});
    bool ok = true;
    for (std::uint64_t r = 1; r < per && ok; ++r) {
      std::optional<Certificate> cr;
      std::uint64_t K = 0;
      for (; K <= opt.max_k && !cr; ++K) cr = prove(p, y.pow(r), u.pow(K) * x.pow(r), opt.budget);
      if (!cr) {
        ok = false;
        break;
      }
      --K;
      const auto R = static_cast<std::int64_t>(r);
      Schema s = schema_trans({
          schema_mul(schema_pow(*cp, Index::quotient(R, P)), IExpr::power(y, Index::constant(R))),
          schema_mul(schema_cert(*cr), IExpr::power(x, Index{1, 0, 0, -R, 1})),
      });
      w.entries.push_back({r, per, K, s});
    }
    if (ok) return w;
  }
  return std::nullopt;
}

std::optional<AsymptoticWitness> cancellation(const Presentation& p, const Expr& u, const Expr& x,
                                              const Expr& y, const AsymOptions& opt) {
  MonomialSet all;
  for (const auto& s : all.enumerate(p.arity(), 2)) {
    if (s == Expr::one()) continue;
    auto c = prove(p, s * y, s * x, opt.budget);
    if (!c) continue;
    auto pu = check_power_universal(p, u, {s}, opt.budget, opt.max_k);
    if (!pu) continue;
    return cancel_factor(p, s, x, y, *c, pu->entries.front(), u);
  }
  return std::nullopt;
}

AsymptoticWitness horizon_evidence(const Presentation& p, const Expr& u, const Expr& x, const Expr& y,
                                   const AsymOptions& opt) {
  AsymptoticWitness w;
  w.kind = AsymptoticWitness::Kind::Horizon;
  w.u = u;
  w.x = x;
  w.y = y;
  for (std::uint64_t n = 0; n <= opt.evidence_n; ++n) {
    for (std::uint64_t k = 0; k <= opt.max_k; ++k) {
      if (auto c = prove(p, y.pow(n), u.pow(k) * x.pow(n), opt.budget)) {
        w.horizon.push_back({n, k, *c});
        break;
      }
    }
  }
  return w;
}

}  // namespace

AsymResult check_asymptotic(const Presentation& p, const Expr& u, const Expr& x, const Expr& y,
                            const AsymOptions& opt) {
  if (u.is_zero()) throw std::invalid_argument("power universal element must be nonzero");
  opt.budget.validate();
  auto accept = [&](AsymptoticWitness w) {
    verify_witness(p, w, opt.horizon);
    AsymResult r;
    r.kind = AsymResult::Kind::Witness;
    r.witness = std::move(w);
    return r;
  };
  if (auto c = prove(p, y, x, opt.budget)) return accept(lift(u, *c));
  if (auto w = periodic_trick(p, u, x, y, opt)) return accept(std::move(*w));
  if (auto w = cancellation(p, u, x, y, opt)) return accept(std::move(*w));
  if (opt.refute) {
    if (auto f = refute(p, y, x)) {
      AsymResult r;
      r.kind = AsymResult::Kind::Refuted;
      r.hom = std::move(*f);
      return r;
    }
  }
  AsymResult r;
  r.witness = horizon_evidence(p, u, x, y, opt);
  return r;
}

}  // namespace psr
