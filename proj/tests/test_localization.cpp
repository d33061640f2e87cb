#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psr/localization.hpp"
#include "support.hpp"

using namespace psr;
using psr::test::load;

TEST_CASE("T-membership and fractions") {
  const auto p = load("inst_d_loc.psr");
  Localization L(p, p.mult_set);
  CHECK(L.membership(p.expr("h^3")));
  CHECK_FALSE(L.membership(p.expr("g")));
  CHECK(L.membership(Expr::one()));
  CHECK_THROWS_AS(L.make(p.expr("g"), p.expr("g")), LocError);
  const auto a = L.make(p.expr("g"), p.expr("h"));
  const auto b = L.make(p.expr("g*h"), p.expr("h^2"));
  const auto sum = L.add(a, b);
  CHECK(sum.den == p.expr("h^3"));
  CHECK(sum.num == p.expr("2*g*h^2"));
}

TEST_CASE("fraction equality") {
  const auto p = load("inst_d_loc.psr");
  Localization L(p, p.mult_set);
  const auto a = L.make(p.expr("g"), p.expr("h"));
  const auto b = L.make(p.expr("g*h"), p.expr("h^2"));
  auto eq = L.frac_eq(a, b);
  REQUIRE(eq.kind == Localization::EqResult::Kind::Equal);
  CHECK_NOTHROW(L.replay_eq(a, b, *eq.cert));
  auto ne = L.frac_eq(a, L.make(p.expr("g"), Expr::one()));
  REQUIRE(ne.kind == Localization::EqResult::Kind::NotEqual);
  CHECK(eval(*ne.hom, p.expr("h")) > 0);
}

TEST_CASE("fraction order") {
  const auto p = load("inst_d_loc.psr");
  Localization L(p, p.mult_set);
  // g*h <= 2 gives g <= 2/h.
  const auto a = L.make(p.expr("g"), Expr::one());
  const auto b = L.make(p.expr("2"), p.expr("h"));
  auto v = L.frac_le(a, b, Budget{});
  REQUIRE(v.kind == Verdict::Kind::Holds);
  CHECK_NOTHROW(L.replay_le(a, b, *v.cert));
  // f(2/h) = 2/beta > alpha = f(g) whenever alpha*beta < 2.
  auto w = L.frac_le(b, a, Budget{});
  CHECK(w.kind == Verdict::Kind::Refuted);
  // Tampered r outside T.
  LocCertificate bad = *v.cert;
  bad.r = p.expr("g");
  CHECK_THROWS(L.replay_le(a, b, bad));
}

TEST_CASE("representative swap and transitivity") {
  const auto p = load("inst_d_loc.psr");
  Localization L(p, p.mult_set);
  const auto a = L.make(p.expr("1"), Expr::one());
  const auto b = L.make(p.expr("g*h"), Expr::one());
  LocCertificate ab{Expr::one(), {{0}}, Certificate::base(p, 0)};
  CHECK_NOTHROW(L.replay_le(a, b, ab));
  const auto a2 = L.make(p.expr("h"), p.expr("h"));
  const auto b2 = L.make(p.expr("g*h^3"), p.expr("h^2"));
  auto qa = L.frac_eq(a, a2), qb = L.frac_eq(b, b2);
  REQUIRE(qa.cert);
  REQUIRE(qb.cert);
  const auto c2 = L.swap_representatives(a, a2, *qa.cert, b, b2, *qb.cert, ab);
  CHECK_NOTHROW(L.replay_le(a2, b2, c2));
  const auto c = L.make(p.expr("2"), Expr::one());
  LocCertificate bc{Expr::one(), {{0}}, Certificate::base(p, 1)};
  CHECK_NOTHROW(L.replay_le(a, c, L.trans(a, b, c, ab, bc)));
}

TEST_CASE("power universality in the localization") {
  const auto p = load("inst_d_loc.psr");
  Localization L(p, p.mult_set);
  const Expr u = *p.power_universal;
  auto pu = check_power_universal(p, u, {p.expr("g"), p.expr("h")}, Budget{});
  REQUIRE(pu);
  const auto f = L.make(p.expr("g"), p.expr("h"));
  const auto r = L.power_universality(f, *pu->find(p.expr("g")), *pu->find(p.expr("h")), u);
  CHECK(r.K == pu->find(p.expr("g"))->k + pu->find(p.expr("h"))->k);
  const auto uk = L.make(u.pow(r.K), Expr::one());
  CHECK_NOTHROW(L.replay_le(f, uk, r.dom));
  CHECK_NOTHROW(L.replay_le(L.canonical(Expr::one()), L.mul(uk, f), r.inv));
}

TEST_CASE("asymptotic lift and lower") {
  const auto p = load("inst_c.psr");
  Localization L(p, {p.expr("x")});
  const Expr u = *p.power_universal;
  const auto w = *check_asymptotic(p, u, p.expr("x"), p.expr("y")).witness;
  const auto lw = lift_asymptotic(w);
  CHECK_NOTHROW(verify_loc_witness(L, lw, 12));
  auto pu = check_power_universal(p, u, {Expr::one()}, Budget{});
  REQUIRE(pu);
  const auto back = lower_asymptotic(L, lw, *pu);
  CHECK(back.x == w.x);
  CHECK(back.y == w.y);
  CHECK_NOTHROW(verify_witness(p, back, 12));
  LocAsymptoticWitness h;
  h.horizon_only = true;
  CHECK_THROWS_AS(lower_asymptotic(L, h, *pu), WitnessError);
}
