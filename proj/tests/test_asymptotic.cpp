#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psr/asymptotic.hpp"
#include "psr/spectrum.hpp"
#include "support.hpp"

using namespace psr;
using psr::test::load;

namespace {

// Independent check of y^n <= u^{k_n} x^n at family points, by evaluation.
void spot_check(const Presentation& p, const AsymptoticWitness& w, std::uint64_t horizon) {
  for (const auto& fp : family_points(p, *p.family, 5, p.family->floor)) {
    const Rational fx = eval(fp.hom, w.x), fy = eval(fp.hom, w.y), fu = eval(fp.hom, w.u);
    Rational xn = 1, yn = 1;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
      xn *= fx;
      yn *= fy;
      Rational uk = 1;
      for (std::uint64_t i = 0; i < w.k_at(n); ++i) uk *= fu;
      CHECK(yn <= uk * xn);
    }
  }
}

}  // namespace

TEST_CASE("INST-C: y below x asymptotically with a periodic envelope") {
  const auto p = load("inst_c.psr");
  const auto r = check_asymptotic(p, *p.power_universal, p.expr("x"), p.expr("y"));
  REQUIRE(r.kind == AsymResult::Kind::Witness);
  const auto& w = *r.witness;
  CHECK(w.kind == AsymptoticWitness::Kind::Periodic);
  CHECK(w.modulus() == 2);
  CHECK(w.max_K() == 1);
  // Even n: (y^2)^{n/2} <= (x^2)^{n/2}. Odd n pays one factor y <= 2 <= 2x.
  CHECK(w.k_at(2) == 0);
  CHECK(w.k_at(3) == 1);
  CHECK_NOTHROW(verify_witness(p, w, 12));
  spot_check(p, w, 12);
}

TEST_CASE("asymptotic refutation") {
  const auto p = load("inst_a.psr");
  const auto r = check_asymptotic(p, *p.power_universal, p.expr("1"), p.expr("x"));
  REQUIRE(r.kind == AsymResult::Kind::Refuted);
  CHECK(eval(*r.hom, p.expr("x")) > 1);
  const auto s = check_asymptotic(p, *p.power_universal, p.expr("2"), p.expr("x"));
  CHECK(s.kind == AsymResult::Kind::Witness);
}

TEST_CASE("tampered witnesses are rejected") {
  const auto p = load("inst_c.psr");
  auto w = *check_asymptotic(p, *p.power_universal, p.expr("x"), p.expr("y")).witness;
  auto lower_k = w;
  for (auto& e : lower_k.entries) e.K = 0;
  CHECK_THROWS(verify_witness(p, lower_k, 12));
  auto swapped = w;
  std::swap(swapped.x, swapped.y);
  CHECK_THROWS(verify_witness(p, swapped, 12));
  auto missing = w;
  missing.entries.pop_back();
  CHECK_THROWS_AS(verify_witness(p, missing, 12), WitnessError);
}

TEST_CASE("lift and composition") {
  const auto p = load("inst_a.psr");
  const Expr u = *p.power_universal;
  const auto w1 = lift(u, Certificate::base(p, 1));  // x <= 2
  CHECK(w1.kind == AsymptoticWitness::Kind::ConstantK);
  CHECK(w1.max_K() == 0);
  CHECK_NOTHROW(verify_witness(p, w1, 12));
  const auto w2 = lift(u, Certificate::base(p, 0));  // 1 <= x
  const auto w = compose_asymptotic(w1, w2);
  CHECK(w.x == Expr::constant(2));
  CHECK(w.y == Expr::one());
  CHECK_NOTHROW(verify_witness(p, w, 12));
}

TEST_CASE("power universality") {
  const auto d = load("inst_d.psr");
  const std::vector<Expr> cover{d.expr("g"), d.expr("h"), d.expr("g*h")};
  auto good = check_power_universal(d, d.expr("2 + 2*g"), cover, Budget{});
  REQUIRE(good);
  for (const auto& e : good->entries) {
    CHECK(replay(d, e.dom) == std::pair{e.x, good->u.pow(e.k)});
    CHECK(replay(d, e.inv) == std::pair{Expr::one(), good->u.pow(e.k) * e.x});
  }
  // h <= (2g)^k fails at alpha = 1/2, beta = 2 for every k.
  CHECK_FALSE(check_power_universal(d, d.expr("2*g"), {d.expr("h")}, Budget{}));
  CHECK_THROWS_AS(check_power_universal(d, Expr::zero(), cover, Budget{}), std::invalid_argument);
}

TEST_CASE("cancellation envelope is twice the power universal exponent") {
  const auto p = load("inst_c.psr");
  const Expr u = *p.power_universal;
  const Expr s = p.expr("x");
  auto pu = check_power_universal(p, u, {s}, Budget{});
  REQUIRE(pu);
  // x*y^2 <= x*x^2 from y^2 <= x^2, so x^2 >~ y^2.
  const Certificate c = Certificate::mul(Certificate::base(p, 0), s);
  const auto w = cancel_factor(p, s, p.expr("x^2"), p.expr("y^2"), c, pu->entries[0], u);
  CHECK(w.max_K() == 2 * pu->entries[0].k);
  CHECK_NOTHROW(verify_witness(p, w, 8));
}

TEST_CASE("congruences keep the envelope") {
  const auto p = load("inst_c.psr");
  const Expr u = *p.power_universal;
  const auto w = *check_asymptotic(p, u, p.expr("x"), p.expr("y")).witness;
  auto one_le_u = prove(p, Expr::one(), u, Budget{});
  REQUIRE(one_le_u);
  const auto m = mul_congruence(w, p.expr("x + 1"));
  CHECK(m.max_K() == w.max_K());
  CHECK_NOTHROW(verify_witness(p, m, 8));
  const auto a = add_congruence(w, p.expr("y"), *one_le_u);
  CHECK(a.max_K() <= w.max_K());
  CHECK_NOTHROW(verify_witness(p, a, 6));
}

TEST_CASE("horizon-only input cannot be flattened") {
  DoubledWitness d;
  d.horizon_only = true;
  CHECK_THROWS_AS(flatten(d), WitnessError);
}

TEST_CASE("horizon evidence does not claim") {
  const auto p = load("inst_d.psr");
  AsymOptions o;
  o.refute = false;
  const auto r = check_asymptotic(p, *p.power_universal, p.expr("h"), p.expr("g"), o);
  CHECK(r.kind == AsymResult::Kind::Unknown);
  if (r.witness) CHECK_FALSE(r.witness->claims_asymptotic());
}
