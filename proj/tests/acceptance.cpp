// Acceptance run: one PASS/FAIL line per criterion. argv[1] is the psr CLI.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "psr/parser.hpp"
#include "psr/serialize.hpp"
#include "psr/suites.hpp"
#include "support.hpp"

using namespace psr;
using psr::test::load;

namespace {

std::string g_cli;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

/// Runs the CLI; returns (exit code, stdout).
std::pair<int, std::string> run_cli(const std::vector<std::string>& args) {
  std::string cmd = quote(g_cli);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::string inst(const std::string& name) { return std::string(PSR_INSTANCE_DIR) + "/" + name; }

// ---------------------------------------------------------------- 1

Outcome soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Presentation> ps{load("inst_a.psr"), load("inst_c.psr"), load("inst_d.psr")};
  std::vector<std::vector<Hom>> homs;
  for (const auto& p : ps) {
    std::vector<Hom> hs = default_valuations(p);
    for (auto& fp : family_points(p, *p.family, 5, p.family->floor)) hs.push_back(fp.hom);
    homs.push_back(std::move(hs));
  }
  std::mt19937_64 rng(2024);
  auto sample = [&](std::size_t arity) {
    Expr e;
    for (std::uint64_t t = 0; t < 1 + rng() % 2; ++t) {
      std::vector<std::uint32_t> ex(arity);
      std::uint32_t left = 2;
      for (auto& x : ex) left -= (x = static_cast<std::uint32_t>(rng() % (left + 1)));
      e += Expr::monomial(Monomial(ex), 1 + rng() % 2);
    }
    return e;
  };
  std::size_t proved = 0, attempts = 0, monotone_checks = 0;
  while (proved < 1000 && attempts < 20000) {
    const auto& p = ps[attempts % ps.size()];
    const auto& hs = homs[attempts % ps.size()];
    ++attempts;
    // Goal: a randomly scaled and shifted base relation, found by search.
    const auto& rel = p.relations[rng() % p.relations.size()];
    const Expr c = sample(p.arity()), d = rng() % 2 ? sample(p.arity()) : Expr::zero();
    const Expr lo = rel.lhs * c + d, hi = rel.rhs * c + d;
    auto cert = prove(p, lo, hi, Budget{});
    if (!cert) continue;
    if (replay(p, *cert) != std::pair{lo, hi}) return {false, "certificate concludes another claim"};
    for (const auto& f : hs) {
      ++monotone_checks;
      if (!monotone_along(f, *cert)) return {false, "a verified hom is not monotone along a certificate"};
    }
    ++proved;
  }
  const double s = seconds_since(t0);
  std::ostringstream os;
  os << proved << " certificates from " << attempts << " goals, " << monotone_checks << " monotonicity checks, "
     << s << " s";
  return {proved >= 1000 && s < 60, os.str()};
}

// ---------------------------------------------------------------- 2

Outcome duality() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = load("inst_a.psr");
  std::size_t agree = 0, inconclusive = 0, total = 0;
  std::string first_bad;
  for (Coef a = 1; a <= 4; ++a)
    for (Coef b = 1; b <= 4; ++b)
      for (std::uint32_t pp = 0; pp <= 3; ++pp)
        for (std::uint32_t q = 0; q <= 3; ++q) {
          ++total;
          const Expr upper = Expr::monomial(Monomial({pp}), a), lower = Expr::monomial(Monomial({q}), b);
          // f(a x^p) = a c^p is monotone in c, so the endpoints decide.
          bool ge = true;
          for (long c : {1L, 2L}) {
            long lhs = static_cast<long>(a), rhs = static_cast<long>(b);
            for (std::uint32_t i = 0; i < pp; ++i) lhs *= c;
            for (std::uint32_t i = 0; i < q; ++i) rhs *= c;
            if (lhs < rhs) ge = false;
          }
          const auto r = dual_compare(p, *p.family, lower, upper);
          if (r.kind == DualResult::Kind::Inconclusive) ++inconclusive;
          const bool ok = ge ? r.kind == DualResult::Kind::AsymptoticallyGE : r.kind == DualResult::Kind::Separated;
          if (ok && r.witness) verify_witness(p, *r.witness, 12);
          if (ok) ++agree;
          else if (first_bad.empty()) first_bad = p.str(upper) + " vs " + p.str(lower);
        }
  const double s = seconds_since(t0);
  std::ostringstream os;
  os << agree << "/" << total << " agree with the endpoint oracle, " << inconclusive << " inconclusive, " << s
     << " s";
  if (!first_bad.empty()) os << ", first mismatch " << first_bad;
  return {agree == total && inconclusive == 0 && s < 120, os.str()};
}

// ---------------------------------------------------------------- 3

Outcome gap() {
  const auto p = load("inst_c.psr");
  const bool unknown = check_preorder(p, p.expr("y"), p.expr("x"), Budget{}).kind == Verdict::Kind::Unknown;
  const auto r = check_asymptotic(p, *p.power_universal, p.expr("x"), p.expr("y"));
  bool periodic = false;
  if (r.kind == AsymResult::Kind::Witness) {
    verify_witness(p, *r.witness, 12);
    periodic = r.witness->kind == AsymptoticWitness::Kind::Periodic && r.witness->max_K() == 1;
  }
  const auto [check_rc, check_out] = run_cli({"check", inst("inst_c.psr"), "y", "x"});
  const auto [asym_rc, asym_out] = run_cli({"asym", inst("inst_c.psr"), "y", "x"});
  const bool cli = check_rc == 2 && asym_rc == 0 && asym_out.find("Periodic") != std::string::npos &&
                   asym_out.find("max K 1") != std::string::npos;
  std::ostringstream os;
  os << "check exit " << check_rc << ", asym exit " << asym_rc << ", library: unknown=" << unknown
     << " periodic maxK1=" << periodic;
  return {unknown && periodic && cli, os.str()};
}

// ---------------------------------------------------------------- 4

Outcome suites() {
  std::size_t failed = 0, total = 0;
  std::string first;
  for (const char* name : psr::test::kInstances) {
    for (const auto& r : run_suites(load(name))) {
      ++total;
      if (!r.passed) {
        ++failed;
        if (first.empty()) first = std::string(name) + ": " + r.name + ": " + r.detail;
      }
    }
  }
  std::ostringstream os;
  os << total - failed << "/" << total << " suite runs passed over " << std::size(psr::test::kInstances)
     << " presentations";
  if (!first.empty()) os << ", first failure " << first;
  return {failed == 0, os.str()};
}

// ---------------------------------------------------------------- 5

Outcome extensions() {
  const auto p = load("inst_d.psr");
  const Expr g = p.expr("g"), h = p.expr("h"), gh = p.expr("g*h"), one_h = p.expr("1 + h");
  const std::vector<Rational> cs{1, Rational(5, 4), Rational(3, 2), Rational(7, 4), 2};
  std::size_t points = 0, ok = 0;
  for (int i = 0; i < 10; ++i) {
    const Rational beta = Rational(1, 64) + Rational(i) * (2 - Rational(1, 64)) / 9;
    for (const auto& c : cs) {
      ++points;
      const Rational alpha = c / beta;
      std::vector<Rational> pt{alpha, beta};
      if (!p.family->satisfies_constraints(pt) || alpha < Rational(1, 2)) continue;
      const SliceHom fb{{gh, one_h}, {c, 1 + beta}};
      const auto fm = extend_b_to_minus(fb, {h, gh});
      const bool identity = eval_sub(fm, gh) == c && eval_sub(fm, one_h) == 1 + beta;
      bool k_free = true;
      for (std::uint64_t k = 1; k <= 3; ++k) {
        auto v = value_with_k(fm, h, g, k), w = value_with_k(fm, h, g, k + 1);
        k_free = k_free && v && w && *v == *w && *v == alpha;
      }
      const auto full = extend_minus_to_full(p, fm, h);
      const bool extended = full.kind == FullExtension::Kind::Extended && full.hom.values == pt;
      if (identity && k_free && extended) ++ok;
    }
  }
  // The boundary member beta = 0 (f(h) = 0 forced) is exactly where extension fails.
  std::size_t boundary = 0;
  for (const auto& c : cs) {
    const SliceHom edge{{h, gh}, {0, c}};
    if (extend_minus_to_full(p, edge, h).kind == FullExtension::Kind::NoExtension) ++boundary;
  }
  std::ostringstream os;
  os << ok << "/" << points << " sample points satisfy restriction identity, k-independence and extension; "
     << boundary << "/" << cs.size() << " boundary members give NoExtension";
  return {ok == 50 && points == 50 && boundary == cs.size(), os.str()};
}

// ---------------------------------------------------------------- 6

Outcome conditions() {
  const auto p = load("inst_d.psr");
  const auto m1 = check_M1(p, monomial_samples(2, 4));
  std::size_t m1_ok = 0;
  for (const auto& e : m1) {
    if (!e.found) continue;
    const Expr x = e.m * e.t1 * e.s;
    if (replay(p, e.lower) == std::pair{e.t2, x.scaled(e.n)} && replay(p, e.upper) == std::pair{x, e.t2.scaled(e.n)})
      ++m1_ok;
  }
  std::size_t m2_ok = 0, m2_total = 0;
  for (const auto& e : check_M2(p)) {
    ++m2_total;
    const auto& mono = e.m.terms().back().mono;
    const auto a = mono.exponent(0), b = mono.exponent(1);
    if (b >= a) {
      const Coef bound = Coef{1} << b;
      if (e.bound.kind == BoundReport::Kind::Bounded && e.n == bound && e.cert &&
          replay(p, *e.cert) == std::pair{e.m, Expr::constant(bound)})
        ++m2_ok;
    } else {
      bool rising = e.bound.kind == BoundReport::Kind::Unbounded && e.bound.argmax.size() == e.bound.sups.size();
      for (std::size_t i = 1; rising && i < e.bound.sups.size(); ++i) rising = e.bound.sups[i] > e.bound.sups[i - 1];
      for (const auto& pt : e.bound.argmax) rising = rising && p.family->satisfies_constraints(pt);
      if (rising) ++m2_ok;
    }
  }
  std::ostringstream os;
  os << "M1 " << m1_ok << "/" << m1.size() << " samples verified, M2 " << m2_ok << "/" << m2_total
     << " members match 2^b / unbounded";
  return {m1_ok == m1.size() && !m1.empty() && m2_ok == m2_total && m2_total == 15, os.str()};
}

// ---------------------------------------------------------------- 7

Outcome specialization() {
  const auto p = load("inst_d.psr");
  const auto samples = monomial_samples(2, 4);
  const std::vector<Expr> t1{Expr::one()};
  const bool lib = print_m1(p, check_M1(p, samples)) == print_m1(p, check_M1prime(p, t1, samples)) &&
                   print_m2(p, check_M2(p)) == print_m2(p, check_M2prime(p, t1));
  bool cli = true;
  for (const std::string c : {"m1", "m2"}) {
    auto plain = run_cli({"conds", inst("inst_d.psr"), c});
    auto prime = run_cli({"conds", inst("inst_d.psr"), c + "p", "--tset", "1"});
    cli = cli && plain == prime && !plain.second.empty();
  }
  return {lib && cli, std::string("library ") + (lib ? "identical" : "differs") + ", cli " +
                          (cli ? "byte-identical" : "differs")};
}

// ---------------------------------------------------------------- 8

Outcome cli_contract() {
  std::size_t fixed = 0;
  for (const char* name : psr::test::kInstances) {
    const auto p = load(name);
    const auto text = print_presentation(p);
    if (parse_presentation(text) == p && print_presentation(parse_presentation(text)) == text) ++fixed;
  }
  // Emitted files re-certify; edited conclusions are rejected.
  const std::string cert = "/tmp/psr_acceptance_cert.txt", wit = "/tmp/psr_acceptance_wit.txt";
  bool roundtrip = run_cli({"check", inst("inst_a.psr"), "1", "x^2", "-o", cert}).first == 0 &&
                   run_cli({"certify", cert}).first == 0 &&
                   run_cli({"asym", inst("inst_c.psr"), "y", "x", "-o", wit}).first == 0 &&
                   run_cli({"certify", wit}).first == 0;
  bool tamper_rejected = true;
  for (const auto& [file, from, to] : {std::tuple{cert, std::string("1 <= x^2"), std::string("2 <= x^2")},
                                       std::tuple{wit, std::string("K=[1]"), std::string("K=[0]")}}) {
    std::string text = read_file(file);
    const auto pos = text.find(from, text.find("end presentation"));
    if (pos == std::string::npos) {
      tamper_rejected = false;
      continue;
    }
    text.replace(pos, from.size(), to);
    const std::string bad = file + ".bad";
    write_file(bad, text);
    tamper_rejected = tamper_rejected && run_cli({"certify", bad}).first >= 3;
  }
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases{
      {{"check", inst("inst_a.psr"), "1", "x"}, 0},
      {{"check", inst("inst_a.psr"), "x", "1"}, 1},
      {{"check", inst("inst_c.psr"), "y", "x"}, 2},
      {{"dual", inst("inst_c.psr"), "y", "x"}, 0},
      {{"dual", inst("inst_a.psr"), "x^3", "3*x"}, 1},
      {{"separate", inst("inst_c.psr"), "y", "x"}, 2},
      {{"localize", inst("inst_d_loc.psr"), "g/h", "g*h/h^2", "eq"}, 0},
      {{"localize", inst("inst_d_loc.psr"), "g/h", "g", "eq"}, 1},
      {{"member", inst("inst_a.psr"), "sb", "x"}, 0},
      {{"member", inst("inst_d.psr"), "sminus", "g"}, 2},
      {{"check", inst("inst_a.psr"), "1", "z"}, 3},
      {{"nonsense"}, 3},
  };
  std::size_t codes = 0;
  for (const auto& c : cases) codes += run_cli(c.args).first == c.code;
  const bool stable = run_cli({"conds", inst("inst_d.psr"), "m2"}) == run_cli({"conds", inst("inst_d.psr"), "m2"});
  std::ostringstream os;
  os << fixed << "/" << std::size(psr::test::kInstances) << " presentations fixed under parse-print-parse, round trip "
     << (roundtrip ? "ok" : "FAILED") << ", tampering " << (tamper_rejected ? "rejected" : "ACCEPTED") << ", "
     << codes << "/" << cases.size() << " exit codes, output " << (stable ? "stable" : "UNSTABLE");
  return {fixed == std::size(psr::test::kInstances) && roundtrip && tamper_rejected && codes == cases.size() && stable,
          os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance PSR_CLI\n";
    return 3;
  }
  g_cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"certificate soundness", soundness},
      {"duality on INST-A", duality},
      {"gap exhibition on INST-C", gap},
      {"property suites", suites},
      {"extension formulas on INST-D", extensions},
      {"M1/M2 reports on INST-D", conditions},
      {"T = {1} specialization", specialization},
      {"CLI contract", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
