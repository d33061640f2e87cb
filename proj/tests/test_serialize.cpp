#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psr/serialize.hpp"
#include "support.hpp"

using namespace psr;
using psr::test::load;

namespace {

// Replaces the first occurrence of `from` after the presentation block.
std::string tamper(std::string text, const std::string& from, const std::string& to) {
  const auto start = text.find("end presentation");
  const auto pos = text.find(from, start);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("certificate file round trip") {
  const auto p = load("inst_c.psr");
  const auto c = *prove(p, p.expr("y^2 + 1"), p.expr("x^2 + 2"), Budget{});
  const auto text = write_certificate(p, c);
  const auto f = read_cert_file(text);
  CHECK(f.kind == CertFile::Kind::Certificate);
  CHECK(f.presentation == p);
  CHECK(f.cert == c);
  CHECK(write_certificate(f.presentation, f.cert) == text);
  CHECK(certify(f).rfind("verified", 0) == 0);
}

TEST_CASE("tampered certificate is rejected") {
  const auto p = load("inst_a.psr");
  const auto c = *prove(p, p.expr("1"), p.expr("x"), Budget{});
  const auto text = write_certificate(p, c);
  const auto bad = read_cert_file(tamper(text, "1 <= x", "1 <= 2*x"));
  CHECK_THROWS(certify(bad));
}

TEST_CASE("witness file round trip and tampering") {
  const auto p = load("inst_c.psr");
  const auto w = *check_asymptotic(p, *p.power_universal, p.expr("x"), p.expr("y")).witness;
  const auto text = write_witness(p, w);
  const auto f = read_cert_file(text);
  REQUIRE(f.witness);
  CHECK(write_witness(f.presentation, *f.witness) == text);
  CHECK_NOTHROW(certify(f));
  const auto bad = read_cert_file(tamper(text, "K=[1]", "K=[0]"));
  CHECK_THROWS(certify(bad));
}

TEST_CASE("membership, extension and localization files") {
  const auto p = load("inst_d_loc.psr");
  const auto mc = *membership(p, p.expr("g*h"), MemberKind::Bounded, 4, Budget{});
  CHECK_NOTHROW(certify(read_cert_file(write_membership(p, mc))));

  ExtRelations R;
  R.pairs = {{p.expr("g"), p.expr("h")}};
  const auto ec = ext_mul(ext_canonical(p.expr("g"), p.expr("h")), p.expr("g"));
  const auto et = write_ext(p, R, ec);
  CHECK_NOTHROW(certify(read_cert_file(et)));
  CHECK(write_ext(p, R, ec) == et);

  Localization L(p, p.mult_set);
  const auto a = L.make(p.expr("g"), Expr::one()), b = L.make(p.expr("2"), p.expr("h"));
  const auto v = L.frac_le(a, b, Budget{});
  REQUIRE(v.cert);
  const auto lt = write_loc(p, {false, a, b, *v.cert});
  CHECK_NOTHROW(certify(read_cert_file(lt)));
}

TEST_CASE("malformed files report a line") {
  CHECK_THROWS_AS(read_cert_file("not a certificate\n"), FormatError);
  const auto p = load("inst_a.psr");
  auto text = write_certificate(p, Certificate::base(p, 0));
  text += "  trailing junk\n";
  CHECK_THROWS(read_cert_file(text));
}
