#include "psr/spectrum.hpp"

#include <exception>
#include <sstream>

namespace psr {

const char* member_name(MemberKind k) {
  switch (k) {
    case MemberKind::Plus: return "splus";
    case MemberKind::Minus: return "sminus";
    case MemberKind::Bounded: return "sb";
  }
  return "?";
}

std::optional<MembershipCertificate> membership(const Presentation& p, const Expr& s, MemberKind kind,
                                                Coef bound, const Budget& b) {
  if (bound == 0) throw std::invalid_argument("membership bound must be at least 1");
  if (s.is_zero() && kind == MemberKind::Plus) return MembershipCertificate{kind, s, 0, true, {}, {}};
  for (Coef n = 1; n <= bound; ++n) {
    MembershipCertificate mc{kind, s, n, false, {}, {}};
    if (kind != MemberKind::Minus) {
      auto c = prove(p, Expr::one(), s.scaled(n), b);
      if (!c) continue;
      mc.plus = *c;
    }
    if (kind != MemberKind::Plus) {
      auto c = prove(p, s, Expr::constant(n), b);
      if (!c) continue;
      mc.minus = *c;
    }
    return mc;
  }
  return std::nullopt;
}

void replay_membership(const Presentation& p, const MembershipCertificate& mc) {
  if (mc.zero) {
    if (mc.kind != MemberKind::Plus || !mc.s.is_zero()) throw ReplayError("only 0 in S+ holds by definition");
    return;
  }
  auto check = [&](const Certificate& c, const Expr& lhs, const Expr& rhs, const char* what) {
    if (!c.valid()) throw ReplayError(std::string("missing ") + what + " certificate");
    auto [l, r] = replay(p, c);
    if (!(l == lhs) || !(r == rhs)) throw ReplayError(std::string(what) + " certificate concludes the wrong inequality");
  };
  if (mc.kind != MemberKind::Minus) check(mc.plus, Expr::one(), mc.s.scaled(mc.n), "S+");
  if (mc.kind != MemberKind::Plus) check(mc.minus, mc.s, Expr::constant(mc.n), "S-");
}

std::optional<Rational> shifted_value(const SliceHom& fb, const Expr& x) {
  auto v = eval_sub(fb, Expr::one() + x);
  if (!v) return std::nullopt;
  return *v - 1;
}

SliceHom extend_b_to_minus(const SliceHom& fb, const std::vector<Expr>& minus_subgens) {
  SliceHom out{minus_subgens, {}};
  for (const auto& t : minus_subgens) {
    auto v = shifted_value(fb, t);
    if (!v) throw ExtensionError("1 + t is outside the S_b slice for a sub-generator t");
    if (*v < 0) throw ExtensionError("f(1 + t) < 1 for a sub-generator t");
    out.values.push_back(*v);
  }
  return out;
}

std::optional<Rational> value_with_k(const SliceHom& fm, const Expr& ubar, const Expr& x, std::uint64_t k) {
  auto fu = eval_sub(fm, ubar);
  if (!fu || *fu == 0) return std::nullopt;
  auto v = eval_sub(fm, ubar.pow(k) * x);
  if (!v) return std::nullopt;
  Rational d = 1;
  for (std::uint64_t i = 0; i < k; ++i) d *= *fu;
  return *v / d;
}

FullExtension extend_minus_to_full(const Presentation& p, const SliceHom& fm, const Expr& ubar,
                                   std::uint64_t max_k) {
  if (ubar.is_zero()) throw ExtensionError("ubar must be nonzero");
  auto fu = eval_sub(fm, ubar);
  if (!fu) throw ExtensionError("ubar is outside the S- slice");
  FullExtension out;
  if (*fu == 0) return out;
  out.kind = FullExtension::Kind::Extended;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    const Expr g = Expr::generator(i);
    std::optional<Rational> v;
    std::uint64_t k = 0;
    for (; k <= max_k && !v; ++k) v = value_with_k(fm, ubar, g, k);
    if (!v) throw ExtensionError("no k <= " + std::to_string(max_k) + " puts ubar^k " + p.generators[i] +
                                 " in the S- slice");
    out.hom.values.push_back(*v);
    out.ks.push_back(k - 1);
  }
  if (!verify_hom(p, out.hom)) throw ExtensionError("extension is not a monotone homomorphism");
  return out;
}

SliceHom restrict_to(const Hom& f, const std::vector<Expr>& subgens) {
  SliceHom out{subgens, {}};
  for (const auto& t : subgens) out.values.push_back(eval(f, t));
  return out;
}

Rational eval_fraction(const Hom& f, const Fraction& q) {
  Rational d = eval(f, q.den);
  if (d == 0) throw std::domain_error("denominator evaluates to 0");
  return eval(f, q.num) / d;
}

std::vector<FamilyPoint> family_points(const Presentation& p, const HomFamily& fam, std::size_t grid,
                                       const Rational& floor) {
  std::vector<FamilyPoint> out;
  for (auto& pt : grid_points(fam.truncated_box(floor), grid)) {
    if (!fam.satisfies_constraints(pt)) continue;
    try {
      Hom f{fam.valuation_at(pt)};
      if (verify_hom(p, f)) out.push_back({std::move(pt), std::move(f)});
    } catch (const std::domain_error&) {
    }
  }
  return out;
}

const char* bound_name(BoundReport::Kind k) {
  switch (k) {
    case BoundReport::Kind::Bounded: return "bounded";
    case BoundReport::Kind::Unbounded: return "unbounded";
    case BoundReport::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// e = c0 + c1 * x_i with the other parameters fixed; nullopt if e has
// degree > 1 in x_i.
std::optional<std::pair<Rational, Rational>> affine_in(const Expr& e, std::size_t i,
                                                       const std::vector<Rational>& pt) {
  Rational c0 = 0, c1 = 0;
  for (const auto& t : e.terms()) {
    const auto ei = t.mono.exponent(i);
    if (ei > 1) return std::nullopt;
    Rational v = t.coef;
    for (std::size_t j = 0; j < pt.size(); ++j) {
      if (j == i) continue;
      for (std::uint32_t k = 0; k < t.mono.exponent(j); ++k) v *= pt[j];
    }
    (ei == 0 ? c0 : c1) += v;
  }
  return std::pair{c0, c1};
}

std::vector<std::vector<Rational>> sup_candidates(const HomFamily& fam, const Box& box, std::size_t grid) {
  auto pts = grid_points(box, grid);
  std::vector<std::vector<Rational>> out = pts;
  for (const auto& pt : pts) {
    for (std::size_t i = 0; i < pt.size(); ++i) {
      for (const auto& c : fam.constraints) {
        auto l = affine_in(c.lhs, i, pt), r = affine_in(c.rhs, i, pt);
        if (!l || !r || l->second == r->second) continue;
        Rational x = (r->first - l->first) / (l->second - r->second);
        if (x < box.lo[i] || x > box.hi[i]) continue;
        auto q = pt;
        q[i] = x;
        out.push_back(std::move(q));
      }
    }
  }
  return out;
}

}  // namespace

BoundReport family_sup(const Presentation& p, const HomFamily& fam, const Expr& num, const Expr& den,
                       const BoundOptions& opt) {
  BoundReport rep;
  Rational floor = fam.floor;
  for (std::size_t j = 0; j < opt.floors; ++j, floor /= 2) {
    Box box = fam.truncated_box(floor);
    auto cands = sup_candidates(fam, box, opt.grid);
    auto scores = kernels::scan(opt.mode, cands.size(), [&](std::size_t i) -> std::optional<Rational> {
      const auto& pt = cands[i];
      if (!fam.satisfies_constraints(pt)) return std::nullopt;
      Hom f;
      try {
        f.values = fam.valuation_at(pt);
      } catch (const std::domain_error&) {
        return std::nullopt;
      }
      if (!verify_hom(p, f)) return std::nullopt;
      Rational d = eval(f, den);
      if (d == 0) return std::nullopt;
      return eval(f, num) / d;
    });
    auto best = kernels::reduce_scores(scores);
    if (!best) return rep;
    rep.floors.push_back(floor);
    rep.sups.push_back(best->score);
    rep.argmax.push_back(cands[best->index]);
  }
  bool constant = true, increasing = rep.sups.size() > 1;
  for (std::size_t j = 1; j < rep.sups.size(); ++j) {
    constant = constant && rep.sups[j] == rep.sups[0];
    increasing = increasing && rep.sups[j] > rep.sups[j - 1];
  }
  if (!rep.sups.empty() && constant) rep.kind = BoundReport::Kind::Bounded;
  else if (increasing) rep.kind = BoundReport::Kind::Unbounded;
  return rep;
}

std::vector<Expr> monomial_samples(std::size_t arity, std::uint64_t d) {
  return MonomialSet{}.enumerate(arity, d);
}

namespace {

const HomFamily& need_family(const Presentation& p) {
  if (!p.family) throw std::invalid_argument("the presentation has no family block");
  return *p.family;
}

std::vector<Expr> members_of_M(const Presentation& p, std::uint64_t d) {
  return p.m_set.value_or(MonomialSet{}).enumerate(p.arity(), d);
}

std::vector<Expr> t_products(const Presentation& p, const std::vector<Expr>& tgens, std::uint32_t total) {
  std::vector<Expr> out;
  for (auto& [e, w] : Localization(p, tgens).enumerate(total)) out.push_back(std::move(e));
  return out;
}

Coef ceil_coef(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (c < 1) return 1;
  if (!c.fits_ulong_p()) return ~Coef{0};
  return c.get_ui();
}

std::vector<M1Entry> m1_impl(const Presentation& p, const std::vector<Expr>& ts, const std::vector<Expr>& samples,
                             const CondOptions& opt) {
  const auto& fam = need_family(p);
  const auto pts = family_points(p, fam, opt.bound.grid, fam.floor);
  const auto ms = members_of_M(p, opt.m_degree);
  std::vector<M1Entry> out;
  for (const auto& s : samples) {
    M1Entry e;
    e.s = s;
    for (const auto& m : ms) {
      for (const auto& t1 : ts) {
        for (const auto& t2 : ts) {
          const Expr x = m * t1 * s;
          // Exactly one of f(x), f(t2) vanishing at a point rules the candidate out.
          bool possible = true;
          for (const auto& fp : pts) {
            const bool za = eval(fp.hom, x) == 0, zb = eval(fp.hom, t2) == 0;
            if (za != zb) {
              possible = false;
              break;
            }
          }
          if (!possible) continue;
          // n >= sup f(x)/f(t2) and n >= sup f(t2)/f(x) over the family.
          const auto up = family_sup(p, fam, x, t2, opt.bound);
          if (up.kind != BoundReport::Kind::Bounded) continue;
          const auto down = family_sup(p, fam, t2, x, opt.bound);
          if (down.kind != BoundReport::Kind::Bounded) continue;
          const Rational need = std::max(up.sups.front(), down.sups.front());
          const Coef n0 = ceil_coef(need);
          for (Coef n = n0; n <= opt.max_n && n <= 2 * n0; n *= 2) {
            auto lo = prove(p, t2, x.scaled(n), opt.budget);
            if (!lo) continue;
            auto hi = prove(p, x, t2.scaled(n), opt.budget);
            if (!hi) continue;
            e.found = true;
            e.m = m;
            e.t1 = t1;
            e.t2 = t2;
            e.n = n;
            e.lower = *lo;
            e.upper = *hi;
            break;
          }
          if (e.found) break;
        }
        if (e.found) break;
      }
      if (e.found) break;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<M2Entry> m2_impl(const Presentation& p, const std::vector<Expr>& ts, const CondOptions& opt) {
  const auto& fam = need_family(p);
  std::vector<M2Entry> out;
  for (const auto& m : members_of_M(p, opt.m_degree)) {
    for (const auto& t1 : ts) {
      for (const auto& t2 : ts) {
        M2Entry e{m, t1, t2, family_sup(p, fam, m * t1, t2, opt.bound), 0, std::nullopt};
        if (e.bound.kind == BoundReport::Kind::Bounded) {
          e.n = ceil_coef(e.bound.sups.front());
          if (auto c = prove(p, m * t1, t2.scaled(e.n), opt.budget)) e.cert = *c;
        }
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

std::string point_str(const std::vector<Rational>& pt) {
  std::string s = "(";
  for (std::size_t i = 0; i < pt.size(); ++i) s += (i ? ", " : "") + to_string(pt[i]);
  return s + ")";
}

bool trivial_t(const Expr& t1, const Expr& t2) { return t1 == Expr::one() && t2 == Expr::one(); }

}  // namespace

std::vector<M1Entry> check_M1(const Presentation& p, const std::vector<Expr>& samples, const CondOptions& opt) {
  return m1_impl(p, {Expr::one()}, samples, opt);
}

std::vector<M2Entry> check_M2(const Presentation& p, const CondOptions& opt) {
  return m2_impl(p, {Expr::one()}, opt);
}

std::vector<M1Entry> check_M1prime(const Presentation& p, const std::vector<Expr>& tgens,
                                   const std::vector<Expr>& samples, const CondOptions& opt) {
  return m1_impl(p, t_products(p, tgens, opt.t_total), samples, opt);
}

std::vector<M2Entry> check_M2prime(const Presentation& p, const std::vector<Expr>& tgens, const CondOptions& opt) {
  return m2_impl(p, t_products(p, tgens, opt.t_total), opt);
}

std::string print_m1(const Presentation& p, const std::vector<M1Entry>& entries) {
  std::ostringstream os;
  std::size_t held = 0;
  for (const auto& e : entries) {
    os << "s = " << p.str(e.s) << ": ";
    if (!e.found) {
      os << "not found\n";
      continue;
    }
    ++held;
    os << "m = " << p.str(e.m);
    if (!trivial_t(e.t1, e.t2)) os << ", t1 = " << p.str(e.t1) << ", t2 = " << p.str(e.t2);
    os << ", n = " << e.n << "; " << p.str(e.lower.lhs()) << " <= " << p.str(e.lower.rhs()) << " and "
       << p.str(e.upper.lhs()) << " <= " << p.str(e.upper.rhs()) << "\n";
  }
  os << held << " of " << entries.size() << " samples verified\n";
  return os.str();
}

std::string print_m2(const Presentation& p, const std::vector<M2Entry>& entries) {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << "m = " << p.str(e.m);
    if (!trivial_t(e.t1, e.t2)) os << ", t1 = " << p.str(e.t1) << ", t2 = " << p.str(e.t2);
    os << ": " << bound_name(e.bound.kind);
    switch (e.bound.kind) {
      case BoundReport::Kind::Bounded:
        os << ", sup " << to_string(e.bound.sups.front()) << " at " << point_str(e.bound.argmax.front());
        if (e.cert) os << "; certified " << p.str(e.cert->lhs()) << " <= " << p.str(e.cert->rhs());
        else os << "; no certificate of bound " << e.n << " within budget";
        break;
      default:
        os << ", sups";
        for (std::size_t j = 0; j < e.bound.sups.size(); ++j)
          os << (j ? ", " : " ") << to_string(e.bound.sups[j]) << " at " << point_str(e.bound.argmax[j]);
        break;
    }
    os << "\n";
  }
  return os.str();
}

const char* dual_name(DualResult::Kind k) {
  switch (k) {
    case DualResult::Kind::AsymptoticallyGE: return "AsymptoticallyGE";
    case DualResult::Kind::Separated: return "Separated";
    case DualResult::Kind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

DualResult dual_compare(const Presentation& p, const HomFamily& fam, const Expr& lower, const Expr& upper,
                        const DualOptions& opt) {
  if (!p.power_universal) throw std::invalid_argument("dual needs a power_universal element");
  if (opt.sanity_n > 0) {
    if (auto d = find_degeneracy(p, opt.sanity_n, opt.asym.budget))
      throw SoundnessError("degenerate presentation: " + p.str(d->lhs()) + " <= " + p.str(d->rhs()));
  }
  AsymOptions ao = opt.asym;
  ao.refute = false;  // the two routes must stay independent
  std::optional<Separation> sep;
  AsymResult asym;
  std::exception_ptr sep_err, asym_err;
#pragma omp parallel sections num_threads(2)
  {
#pragma omp section
    {
      try {
        sep = separate(p, fam, lower, upper, opt.sep);
      } catch (...) {
        sep_err = std::current_exception();
      }
    }
#pragma omp section
    {
      try {
        asym = check_asymptotic(p, *p.power_universal, upper, lower, ao);
      } catch (...) {
        asym_err = std::current_exception();
      }
    }
  }
  if (sep_err) std::rethrow_exception(sep_err);
  if (asym_err) std::rethrow_exception(asym_err);

  const bool ge = asym.kind == AsymResult::Kind::Witness;
  if (ge && sep)
    throw SoundnessError("both a witness for " + p.str(upper) + " >~ " + p.str(lower) + " and a separator " +
                         to_string(sep->hom, p) + " were found");
  DualResult out;
  if (ge) {
    out.kind = DualResult::Kind::AsymptoticallyGE;
    out.witness = std::move(asym.witness);
  } else if (sep) {
    out.kind = DualResult::Kind::Separated;
    out.separation = std::move(sep);
  } else {
    out.report = "separate: not found in family at grid " + std::to_string(opt.sep.grid) +
                 "; asymptotic: no witness within budget";
    if (asym.witness) out.report += " (horizon evidence to n = " + std::to_string(asym.witness->horizon.size() ? asym.witness->horizon.back().n : 0) + ")";
  }
  return out;
}

}  // namespace psr
