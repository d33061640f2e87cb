#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psr/order_extension.hpp"
#include "support.hpp"

using namespace psr;
using psr::test::load;

TEST_CASE("decompose over sub-generators") {
  const auto p = load("inst_d.psr");
  const std::vector<Expr> sub{p.expr("g*h"), p.expr("1 + h")};
  auto d = decompose(p.expr("2 + h + g^2*h^2"), sub);
  REQUIRE(d);
  RfSpec f{sub, {3, 5}};
  // 2 + h + (gh)^2 = 1 + (1 + h) + (gh)^2 -> 1 + 5 + 9
  CHECK(eval_sub(f, p.expr("2 + h + g^2*h^2")) == Rational(15));
  CHECK_FALSE(decompose(p.expr("g"), sub));
  CHECK_FALSE(eval_sub(f, p.expr("h")));  // 1 + h in S0, h alone is not
}

TEST_CASE("R-extension certificates replay") {
  const auto p = load("inst_a.psr");
  ExtRelations R;
  R.pairs = {{p.expr("x"), p.expr("1")}};
  // x <=_R 1 and 1 <= x: the extension identifies x with 1.
  const auto ec = ext_canonical(p.expr("x"), p.expr("1"));
  CHECK(replay_ext(p, R, ec) == std::pair{p.expr("x"), Expr::one()});
  const auto sq = ext_mul(ec, p.expr("x"));
  CHECK(replay_ext(p, R, ext_trans(sq, ec)) == std::pair{p.expr("x^2"), Expr::one()});
  CHECK_THROWS_AS(replay_ext(p, ExtRelations{}, ec), ExtError);
}

TEST_CASE("check_ext decides with and without R") {
  const auto p = load("inst_a.psr");
  ExtRelations R;
  R.pairs = {{p.expr("x"), p.expr("1")}};
  auto v = check_ext(p, R, p.expr("x + 1"), p.expr("2"));
  REQUIRE(v.kind == Verdict::Kind::Holds);
  CHECK(replay_ext(p, R, *v.cert) == std::pair{p.expr("x + 1"), p.expr("2")});
  auto none = check_ext(p, ExtRelations{}, p.expr("x"), p.expr("1"));
  CHECK(none.kind != Verdict::Kind::Holds);
}

TEST_CASE("R_f pins values to a spectral point") {
  const auto p = load("inst_a.psr");
  ExtRelations R;
  R.rf = RfSpec{{p.expr("x")}, {Rational(3, 2)}};
  // f(2x) = 3, so 3 <=_R 2x <=_R 3.
  auto up = check_ext(p, R, p.expr("2*x"), p.expr("3"));
  auto down = check_ext(p, R, p.expr("3"), p.expr("2*x"));
  CHECK(up.kind == Verdict::Kind::Holds);
  CHECK(down.kind == Verdict::Kind::Holds);
  // A non-monotone R_f is rejected.
  ExtRelations bad;
  bad.rf = RfSpec{{p.expr("x")}, {Rational(3)}};
  CHECK_THROWS_AS(check_ext(p, bad, p.expr("x"), p.expr("1")), ExtError);
}

TEST_CASE("union factorization round trip") {
  const auto p = load("inst_c.psr");
  ExtRelations R1, R2;
  R1.pairs = {{p.expr("y"), p.expr("x")}};
  R2.pairs = {{p.expr("x"), p.expr("y")}};
  const std::vector<Relation> goals{{p.expr("y"), p.expr("x")}, {p.expr("x^2"), p.expr("x*y")}};
  for (const auto& e : union_factorization_check(p, R1, R2, goals)) {
    CHECK(e.union_kind == Verdict::Kind::Holds);
    CHECK(e.nested_kind == Verdict::Kind::Holds);
    CHECK(e.converted);
  }
  // With R2 empty only y <= x survives, and it converts.
  const auto only = union_factorization_check(p, R1, ExtRelations{}, goals);
  CHECK(only[0].union_kind == Verdict::Kind::Holds);
  CHECK(only[0].converted);
  CHECK(only[1].union_kind != Verdict::Kind::Holds);
}

TEST_CASE("split and flatten are inverse on conclusions") {
  const auto p = load("inst_c.psr");
  ExtRelations R1, R2;
  R1.pairs = {{p.expr("y"), p.expr("x")}};
  R2.pairs = {{p.expr("x*y"), p.expr("2")}};
  const auto ec = ext_trans(ext_mul(ext_canonical(p.expr("y"), p.expr("x")), p.expr("y")),
                            ext_canonical(p.expr("x*y"), p.expr("2")));
  const auto R = union_of(R1, R2);
  const auto concl = replay_ext(p, R, ec);
  const auto nested = split_union(ec, R1);
  CHECK(replay_nested(p, R1, R2, nested) == concl);
  CHECK(replay_ext(p, R, flatten_nested(nested)) == concl);
}

TEST_CASE("telescoping schema") {
  const auto p = load("inst_c.psr");
  const Expr x = p.expr("x"), y = p.expr("y"), a = p.expr("1"), s = p.expr("y");
  ExtRelations R;
  R.pairs = {{y, x}};
  const auto base = ext_add(ext_mul(ext_canonical(y, x), s), a);
  Expr A = Expr::one();
  for (std::uint64_t n = 0; n <= 8; ++n) {
    CAPTURE(n);
    auto [l, r] = replay_ext(p, R, telescoping_schema(x, y, a, a, s, base, n));
    CHECK(l == a * A + s * y.pow(n + 1));
    CHECK(r == a * A + s * x.pow(n + 1));
    A = A * y + x.pow(n + 1);
  }
}
