#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psr/spectrum.hpp"
#include "support.hpp"

using namespace psr;
using psr::test::load;

TEST_CASE("membership on INST-A") {
  const auto p = load("inst_a.psr");
  const Budget b;
  // f(x) ranges over [1, 2]: the least n with n f(x) >= 1 is 1, with f(x) <= n is 2.
  auto plus = membership(p, p.expr("x"), MemberKind::Plus, 8, b);
  auto minus = membership(p, p.expr("x"), MemberKind::Minus, 8, b);
  auto both = membership(p, p.expr("x"), MemberKind::Bounded, 8, b);
  REQUIRE(plus);
  REQUIRE(minus);
  REQUIRE(both);
  CHECK(plus->n == 1);
  CHECK(minus->n == 2);
  CHECK(both->n == 2);
  for (const auto& mc : {*plus, *minus, *both}) CHECK_NOTHROW(replay_membership(p, mc));
  auto zero = membership(p, Expr::zero(), MemberKind::Plus, 8, b);
  REQUIRE(zero);
  CHECK(zero->zero);
  CHECK_THROWS_AS(membership(p, p.expr("x"), MemberKind::Plus, 0, b), std::invalid_argument);
}

TEST_CASE("membership on INST-D") {
  const auto p = load("inst_d.psr");
  const Budget b;
  CHECK(membership(p, p.expr("h"), MemberKind::Minus, 4, b));
  CHECK(membership(p, p.expr("g*h"), MemberKind::Bounded, 4, b));
  CHECK_FALSE(membership(p, p.expr("g"), MemberKind::Minus, 4, b));  // alpha is unbounded
  CHECK_FALSE(membership(p, p.expr("h"), MemberKind::Plus, 4, b));   // beta approaches 0
}

TEST_CASE("tampered membership is rejected") {
  const auto p = load("inst_a.psr");
  auto mc = *membership(p, p.expr("x"), MemberKind::Minus, 8, Budget{});
  mc.n = 1;
  CHECK_THROWS_AS(replay_membership(p, mc), ReplayError);
}

TEST_CASE("slice extension formulas on INST-D") {
  const auto p = load("inst_d.psr");
  const Rational alpha(3), beta(1, 2);
  const SliceHom fb{{p.expr("g*h"), p.expr("1 + h")}, {alpha * beta, 1 + beta}};
  const auto fm = extend_b_to_minus(fb, {p.expr("h"), p.expr("g*h")});
  CHECK(fm.values == std::vector<Rational>{beta, alpha * beta});
  CHECK(value_with_k(fm, p.expr("h"), p.expr("g"), 1) == alpha);
  CHECK(value_with_k(fm, p.expr("h"), p.expr("g"), 2) == alpha);
  CHECK_FALSE(value_with_k(fm, p.expr("h"), p.expr("g"), 0));
  const auto full = extend_minus_to_full(p, fm, p.expr("h"));
  REQUIRE(full.kind == FullExtension::Kind::Extended);
  CHECK(full.hom.values == std::vector<Rational>{alpha, beta});
  CHECK(full.ks == std::vector<std::uint64_t>{1, 0});  // h is already in the slice
  const SliceHom edge{{p.expr("h"), p.expr("g*h")}, {0, 1}};
  CHECK(extend_minus_to_full(p, edge, p.expr("h")).kind == FullExtension::Kind::NoExtension);
  CHECK_THROWS_AS(extend_b_to_minus(fb, {p.expr("g")}), ExtensionError);
}

TEST_CASE("family sup: closed form for g^a h^b on INST-D") {
  // alpha^a beta^b = (alpha beta)^a beta^{b-a} <= 2^b when b >= a; unbounded otherwise.
  const auto p = load("inst_d.psr");
  for (std::uint32_t a = 0; a <= 3; ++a) {
    for (std::uint32_t b = 0; a + b <= 3; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      const Expr m = Expr::monomial(Monomial({a, b}));
      const auto r = family_sup(p, *p.family, m, Expr::one());
      if (b >= a) {
        REQUIRE(r.kind == BoundReport::Kind::Bounded);
        CHECK(r.sups.front() == Rational(1u << b));
      } else {
        REQUIRE(r.kind == BoundReport::Kind::Unbounded);
        for (std::size_t i = 1; i < r.sups.size(); ++i) CHECK(r.sups[i] > r.sups[i - 1]);
      }
    }
  }
}

TEST_CASE("family sup is mode independent") {
  const auto p = load("inst_d.psr");
  BoundOptions s, q;
  s.mode = kernels::Mode::Serial;
  const auto a = family_sup(p, *p.family, p.expr("g*h^2"), p.expr("1"), s);
  const auto b = family_sup(p, *p.family, p.expr("g*h^2"), p.expr("1"), q);
  CHECK(a.sups == b.sups);
  CHECK(a.argmax == b.argmax);
}

TEST_CASE("M1 and M2 on INST-D") {
  const auto p = load("inst_d.psr");
  const auto m1 = check_M1(p, monomial_samples(2, 3));
  for (const auto& e : m1) {
    CAPTURE(p.str(e.s));
    REQUIRE(e.found);
    CHECK(replay(p, e.lower) == std::pair{e.t2, (e.m * e.t1 * e.s).scaled(e.n)});
    CHECK(replay(p, e.upper) == std::pair{e.m * e.t1 * e.s, e.t2.scaled(e.n)});
  }
  CondOptions o;
  o.m_degree = 3;
  for (const auto& e : check_M2(p, o)) {
    const auto a = e.m.terms().back().mono.exponent(0), b = e.m.terms().back().mono.exponent(1);
    if (b >= a) {
      REQUIRE(e.cert);
      CHECK(e.n == Coef{1} << b);
    } else {
      CHECK(e.bound.kind == BoundReport::Kind::Unbounded);
    }
  }
}

TEST_CASE("duality dispatch") {
  const auto p = load("inst_a.psr");
  auto ge = dual_compare(p, *p.family, p.expr("x^2"), p.expr("2*x"));
  CHECK(ge.kind == DualResult::Kind::AsymptoticallyGE);
  auto sep = dual_compare(p, *p.family, p.expr("x^3"), p.expr("3*x"));
  REQUIRE(sep.kind == DualResult::Kind::Separated);
  CHECK(sep.separation->point == std::vector<Rational>{2});
  const auto bad = parse_presentation("generators: x;\nrelation: 2 <= 1;\npower_universal: 2;\n");
  CHECK_THROWS_AS(dual_compare(bad, *p.family, bad.expr("x"), bad.expr("1")), SoundnessError);
}
