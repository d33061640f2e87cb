#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psr/search.hpp"
#include "psr/separate.hpp"
#include "support.hpp"

using namespace psr;
using psr::test::load;

namespace {

Expr random_expr(std::mt19937_64& rng, std::size_t arity) {
  std::vector<Term> terms;
  const auto n = rng() % 4;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> e(arity);
    for (auto& x : e) x = static_cast<std::uint32_t>(rng() % 3);
    terms.push_back({Monomial(e), 1 + rng() % 5});
  }
  return Expr::from_terms(terms);
}

std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t arity) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < arity; ++i) v.emplace_back(static_cast<long>(rng() % 7), static_cast<long>(1 + rng() % 3));
  return v;
}

}  // namespace

TEST_CASE("expr arithmetic agrees with evaluation") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Expr a = random_expr(rng, 3), b = random_expr(rng, 3);
    const auto v = random_point(rng, 3);
    CHECK(evaluate(a + b, v) == evaluate(a, v) + evaluate(b, v));
    CHECK(evaluate(a * b, v) == evaluate(a, v) * evaluate(b, v));
    CHECK(a * b == b * a);
    CHECK((a + b).minus(b) == a);
    Rational p3 = evaluate(a, v);
    CHECK(evaluate(a.pow(3), v) == p3 * p3 * p3);
  }
}

TEST_CASE("expr canonical form") {
  const std::vector<std::string> names{"x", "y"};
  const Expr e = parse_expr("x*y + y*x + 0*x + 1", names);
  CHECK(to_string(e, names) == "2*x*y + 1");
  CHECK(e.terms().back().mono == Monomial({1, 1}));  // leading term
  CHECK(Expr::zero().is_zero());
  CHECK(Expr::constant(0).is_zero());
}

TEST_CASE("coefficient overflow is reported") {
  const Expr big = Expr::constant(Coef{1} << 40);
  CHECK_THROWS_AS(big * big, OverflowError);
  CHECK_THROWS_AS(Expr::constant(2).pow(64), OverflowError);
  CHECK_NOTHROW(Expr::constant(2).pow(63));
}

TEST_CASE("parser accepts the shipped instances") {
  const auto a = load("inst_a.psr");
  CHECK(a.arity() == 1);
  CHECK(a.relations.size() == 2);
  const auto d = load("inst_d.psr");
  REQUIRE(d.family);
  CHECK(d.family->params.size() == 2);
  CHECK(d.family->params[0].hi_infinite);
  CHECK(d.family->params[1].lo_open);
  const auto nat = load("nat.psr");
  CHECK(nat.arity() == 0);
}

TEST_CASE("parse-print-parse is a fixed point") {
  for (const char* name : psr::test::kInstances) {
    CAPTURE(name);
    const auto p = load(name);
    const auto text = print_presentation(p);
    const auto q = parse_presentation(text);
    CHECK(q == p);
    CHECK(print_presentation(q) == text);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_presentation("generators: x, y;\nrelation: x <= z;\n");
    FAIL("accepted an undeclared name");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_presentation("generators: x;\ngenerators: y;\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("generators: x;\nrelation: x <= ;\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("generators: x, x;\n"), ParseError);
}

TEST_CASE("parser totality under mutation") {
  // Every mutation either parses or raises ParseError with a position.
  const std::string base = psr::test::read_instance("inst_d.psr");
  const std::string alphabet = "xgh0123456789+*^()<=;:,{}[]/# \n";
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::string s = base;
    for (int k = 0; k < 3; ++k) {
      const auto pos = rng() % s.size();
      switch (rng() % 3) {
        case 0: s[pos] = alphabet[rng() % alphabet.size()]; break;
        case 1: s.erase(pos, 1); break;
        default: s.insert(pos, 1, alphabet[rng() % alphabet.size()]);
      }
    }
    try {
      parse_presentation(s);
    } catch (const ParseError& e) {
      CHECK(e.line >= 1);
      CHECK(e.column >= 1);
    } catch (const OverflowError&) {
    }
  }
}

TEST_CASE("replay rejects malformed certificates") {
  const auto p = load("inst_a.psr");
  const Certificate c = Certificate::trans(Certificate::base(p, 0), Certificate::base(p, 1));
  auto [l, r] = replay(p, c);
  CHECK(l == Expr::one());
  CHECK(r == Expr::constant(2));
  // Same rule and children, edited conclusion.
  const auto& n = c.node();
  const Certificate bad = Certificate::raw(n.rule, n.lhs, Expr::constant(3), n.index, n.n, n.m, n.c, n.children);
  CHECK_THROWS_AS(replay(p, bad), ReplayError);
  CHECK_THROWS_AS(replay(p, Certificate::raw(Rule::Base, Expr::one(), Expr::one(), 7, 0, 0, {}, {})), ReplayError);
  CHECK_THROWS(Certificate::nat(3, 2));
  CHECK_THROWS_AS(replay(p, Certificate::raw(Rule::NatEmbed, Expr::constant(3), Expr::constant(2), 0, 3, 2, {}, {})),
                  ReplayError);
}

TEST_CASE("preorder check on INST-A") {
  const auto p = load("inst_a.psr");
  const Budget b;
  auto v = check_preorder(p, p.expr("1"), p.expr("x"), b);
  REQUIRE(v.is_holds());
  CHECK(replay(p, v.cert) == std::pair{Expr::one(), p.expr("x")});
  CHECK(check_preorder(p, p.expr("x^2"), p.expr("4"), b).is_holds());
  auto r = check_preorder(p, p.expr("x"), p.expr("1"), b);
  REQUIRE(r.is_refuted());
  CHECK(eval(*r.hom, p.expr("x")) > 1);
  CHECK(verify_hom(p, *r.hom));
}

TEST_CASE("search is budget limited on INST-C") {
  const auto p = load("inst_c.psr");
  const auto v = check_preorder(p, p.expr("y"), p.expr("x"), Budget{});
  CHECK(v.kind == Verdict::Kind::Unknown);
  Budget zero;
  zero.max_nodes = 0;
  CHECK_THROWS_AS(zero.validate(), BudgetError);
}

TEST_CASE("serial and parallel search agree") {
  for (const char* name : {"inst_a.psr", "inst_c.psr", "inst_d.psr"}) {
    const auto p = load(name);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
      const Expr x = random_expr(rng, p.arity()), y = random_expr(rng, p.arity());
      Budget s, q;
      s.mode = kernels::Mode::Serial;
      q.mode = kernels::Mode::Parallel;
      auto a = prove(p, x, y, s), b = prove(p, x, y, q);
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(*a == *b);
    }
  }
}

TEST_CASE("natural numbers") {
  CHECK(nat_compare(2, 3).is_holds());
  CHECK(nat_compare(3, 2).is_refuted());
  const auto p = load("nat.psr");
  CHECK(check_preorder(p, p.expr("2"), p.expr("5"), Budget{}).is_holds());
  CHECK(check_preorder(p, p.expr("5"), p.expr("2"), Budget{}).is_refuted());
}

TEST_CASE("no degeneracy in the shipped instances") {
  for (const char* name : {"inst_a.psr", "inst_c.psr", "inst_d.psr"}) {
    CAPTURE(name);
    CHECK_FALSE(find_degeneracy(load(name), 3, Budget{}));
  }
  // 2 <= 1 collapses every n <= m.
  auto bad = parse_presentation("generators: x;\nrelation: 2 <= 1;\n");
  CHECK(find_degeneracy(bad, 3, Budget{}));
}

TEST_CASE("truncated boxes") {
  const auto d = load("inst_d.psr");
  const Box box = d.family->truncated_box();
  CHECK(box.lo[0] == Rational(1, 2));
  CHECK(box.hi[0] == 64);
  CHECK(box.hi_truncated[0]);
  CHECK(box.lo[1] == Rational(1, 64));
  CHECK(box.lo_truncated[1]);
  CHECK(box.hi[1] == 2);
}

TEST_CASE("separate on INST-A") {
  const auto p = load("inst_a.psr");
  // f(x) - f(1) = c - 1 peaks at c = 2.
  auto s = separate(p, *p.family, p.expr("x"), p.expr("1"));
  REQUIRE(s);
  CHECK(s->gap == 1);
  CHECK(s->point == std::vector<Rational>{2});
  CHECK_FALSE(separate(p, *p.family, p.expr("x"), p.expr("2")));
  SeparateOptions serial;
  serial.mode = kernels::Mode::Serial;
  auto t = separate(p, *p.family, p.expr("x^2"), p.expr("3*x"), serial);
  auto u = separate(p, *p.family, p.expr("x^2"), p.expr("3*x"));
  CHECK(t.has_value() == u.has_value());
}

TEST_CASE("separate finds the constrained corner of INST-C") {
  const auto p = load("inst_c.psr");
  // f(y) - f(1) = b - 1 is largest at b = 2, which forces a = 2.
  auto s = separate(p, *p.family, p.expr("y"), p.expr("1"));
  REQUIRE(s);
  CHECK(s->gap == 1);
  CHECK(s->point == std::vector<Rational>{2, 2});
  CHECK_FALSE(separate(p, *p.family, p.expr("y"), p.expr("x")));
}

TEST_CASE("verified homs are monotone along certificates") {
  const auto p = load("inst_c.psr");
  const Budget b;
  const auto homs = default_valuations(p);
  REQUIRE_FALSE(homs.empty());
  for (const char* goal : {"y^2|x^2 + 1", "1|x*y", "y^2 + x|x^2 + 2", "2|x + y"}) {
    std::string g(goal);
    const auto bar = g.find('|');
    auto c = prove(p, p.expr(g.substr(0, bar)), p.expr(g.substr(bar + 1)), b);
    REQUIRE(c);
    for (const auto& f : homs) CHECK(monotone_along(f, *c));
  }
}
