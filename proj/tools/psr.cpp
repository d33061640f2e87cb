// psr: command-line front end. Exit codes: 0 Holds/Equal/AsymptoticallyGE,
// 1 Refuted/Separated/NotEqual, 2 Unknown/Inconclusive/NotFound, 3 usage,
// parse, replay or soundness errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "psr/parser.hpp"
#include "psr/serialize.hpp"
#include "psr/suites.hpp"

namespace {

using namespace psr;

constexpr int kYes = 0, kNo = 1, kUnknown = 2, kError = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  std::cout << "wrote " << path << "\n";
}

int verdict_code(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Holds: return kYes;
    case Verdict::Kind::Refuted: return kNo;
    case Verdict::Kind::Unknown: return kUnknown;
  }
  return kError;
}

const HomFamily& need_family(const Presentation& p) {
  if (!p.family) throw std::invalid_argument("the presentation has no family block");
  return *p.family;
}

std::vector<Expr> loc_tgens(const Presentation& p) {
  return p.mult_set.empty() ? std::vector<Expr>{Expr::one()} : p.mult_set;
}

struct Flags {
  std::string file, lhs, rhs, out;
  std::uint64_t nodes = Budget{}.max_nodes, degree = Budget{}.max_degree, coef = Budget{}.max_coef;
  std::uint64_t horizon = 12, bound = 16, samples = 4, seed = 1;
  std::size_t grid = 9;
  std::string member_kind, loc_mode, cond, tset;
  bool serial = false;

  Budget budget() const {
    Budget b;
    b.max_nodes = nodes;
    b.max_degree = degree;
    b.max_coef = coef;
    if (serial) b.mode = kernels::Mode::Serial;
    b.validate();
    return b;
  }
  kernels::Mode mode() const { return serial ? kernels::Mode::Serial : kernels::Mode::Parallel; }
  AsymOptions asym() const {
    AsymOptions o;
    o.budget = budget();
    o.horizon = horizon;
    return o;
  }
  SeparateOptions sep() const {
    SeparateOptions o;
    o.grid = grid;
    o.mode = mode();
    return o;
  }
};

// N has exactly one spectral point, the inclusion into the reals.
std::string hom_str(const Hom& f, const Presentation& p) {
  return p.arity() == 0 ? "inclusion of N" : to_string(f, p);
}

void print_separation(const Presentation& p, const Separation& s) {
  std::cout << "point";
  const auto names = p.family->param_names();
  for (std::size_t i = 0; i < s.point.size(); ++i) std::cout << " " << names[i] << "=" << s.point[i].get_str();
  std::cout << "\nhom " << hom_str(s.hom, p) << "\ngap " << s.gap.get_str() << "\n";
}

void print_witness(const AsymptoticWitness& w) {
  std::cout << "witness " << kind_name(w.kind) << " modulus " << w.modulus() << " max K " << w.max_K() << "\n";
  if (w.kind == AsymptoticWitness::Kind::Horizon)
    for (const auto& h : w.horizon) std::cout << "  n=" << h.n << " k=" << h.k << "\n";
}

int cmd_check(const Flags& f) {
  Presentation p = parse_presentation(slurp(f.file));
  const Expr lo = p.expr(f.lhs), hi = p.expr(f.rhs);
  Verdict v = check_preorder(p, lo, hi, f.budget());
  std::cout << verdict_name(v.kind) << "\n";
  if (v.hom) std::cout << "hom " << hom_str(*v.hom, p) << "\n";
  if (v.is_holds()) emit(f.out, write_certificate(p, v.cert));
  return verdict_code(v.kind);
}

int cmd_asym(const Flags& f) {
  Presentation p = parse_presentation(slurp(f.file));
  if (!p.power_universal) throw std::invalid_argument("the presentation declares no power_universal");
  const Expr lo = p.expr(f.lhs), hi = p.expr(f.rhs);
  AsymResult r = check_asymptotic(p, *p.power_universal, hi, lo, f.asym());
  switch (r.kind) {
    case AsymResult::Kind::Witness:
      std::cout << "AsymptoticallyGE\n";
      print_witness(*r.witness);
      emit(f.out, write_witness(p, *r.witness));
      return kYes;
    case AsymResult::Kind::Refuted:
      std::cout << "Refuted\nhom " << hom_str(*r.hom, p) << "\n";
      return kNo;
    case AsymResult::Kind::Unknown:
      std::cout << "Unknown\n";
      if (r.witness) print_witness(*r.witness);
      return kUnknown;
  }
  return kError;
}

int cmd_separate(const Flags& f) {
  Presentation p = parse_presentation(slurp(f.file));
  const Expr lo = p.expr(f.lhs), hi = p.expr(f.rhs);
  auto s = separate(p, need_family(p), lo, hi, f.sep());
  if (!s) {
    std::cout << "NotFoundInFamily\n";
    return kUnknown;
  }
  std::cout << "Separated\n";
  print_separation(p, *s);
  return kNo;
}

int cmd_dual(const Flags& f) {
  Presentation p = parse_presentation(slurp(f.file));
  const Expr lo = p.expr(f.lhs), hi = p.expr(f.rhs);
  DualOptions o;
  o.asym = f.asym();
  o.sep = f.sep();
  DualResult r = dual_compare(p, need_family(p), lo, hi, o);
  std::cout << dual_name(r.kind) << "\n";
  switch (r.kind) {
    case DualResult::Kind::AsymptoticallyGE:
      print_witness(*r.witness);
      emit(f.out, write_witness(p, *r.witness));
      return kYes;
    case DualResult::Kind::Separated:
      print_separation(p, *r.separation);
      return kNo;
    case DualResult::Kind::Inconclusive:
      std::cout << r.report;
      if (!r.report.empty() && r.report.back() != '\n') std::cout << "\n";
      return kUnknown;
  }
  return kError;
}

int cmd_member(const Flags& f) {
  Presentation p = parse_presentation(slurp(f.file));
  MemberKind k = f.member_kind == "splus" ? MemberKind::Plus
                 : f.member_kind == "sminus" ? MemberKind::Minus
                                             : MemberKind::Bounded;
  auto mc = membership(p, p.expr(f.lhs), k, f.bound, f.budget());
  if (!mc) {
    std::cout << "Unknown\n";
    return kUnknown;
  }
  std::cout << "Holds " << member_name(k);
  if (mc->zero) std::cout << " zero";
  else std::cout << " n=" << mc->n;
  std::cout << "\n";
  emit(f.out, write_membership(p, *mc));
  return kYes;
}

int cmd_localize(const Flags& f) {
  Presentation p = parse_presentation(slurp(f.file));
  Localization L(p, loc_tgens(p));
  auto frac = [&](const std::string& s) {
    auto [num, den] = parse_fraction(s, p.generators);
    return L.make(num, den);
  };
  const Fraction a = frac(f.lhs), b = frac(f.rhs);
  if (f.loc_mode == "eq") {
    auto r = L.frac_eq(a, b);
    switch (r.kind) {
      case Localization::EqResult::Kind::Equal:
        std::cout << "Equal r=" << p.str(r.cert->r) << "\n";
        emit(f.out, write_loc(p, {true, a, b, *r.cert}));
        return kYes;
      case Localization::EqResult::Kind::NotEqual:
        std::cout << "NotEqual\nhom " << hom_str(*r.hom, p) << "\n";
        return kNo;
      case Localization::EqResult::Kind::Unknown:
        std::cout << "Unknown\n";
        return kUnknown;
    }
    return kError;
  }
  auto r = L.frac_le(a, b, f.budget());
  std::cout << verdict_name(r.kind);
  if (r.cert) std::cout << " r=" << p.str(r.cert->r);
  std::cout << "\n";
  if (r.hom) std::cout << "hom " << hom_str(*r.hom, p) << "\n";
  if (r.cert) emit(f.out, write_loc(p, {false, a, b, *r.cert}));
  return verdict_code(r.kind);
}

int cmd_conds(const Flags& f) {
  Presentation p = parse_presentation(slurp(f.file));
  CondOptions o;
  o.budget = f.budget();
  o.sample_degree = f.samples;
  o.bound.grid = f.grid;
  o.bound.mode = f.mode();
  std::vector<Expr> tgens = p.mult_set;
  if (!f.tset.empty()) {
    tgens.clear();
    std::stringstream ss(f.tset);
    for (std::string item; std::getline(ss, item, ',');) tgens.push_back(p.expr(item));
  }
  const auto samples = monomial_samples(p.arity(), o.sample_degree);
  if (f.cond == "m1" || f.cond == "m1p") {
    auto es = f.cond == "m1" ? check_M1(p, samples, o) : check_M1prime(p, tgens, samples, o);
    std::cout << print_m1(p, es);
    for (const auto& e : es)
      if (!e.found) return kUnknown;
    return kYes;
  }
  auto es = f.cond == "m2" ? check_M2(p, o) : check_M2prime(p, tgens, o);
  std::cout << print_m2(p, es);
  for (const auto& e : es)
    if (e.bound.kind == BoundReport::Kind::Inconclusive ||
        (e.bound.kind == BoundReport::Kind::Bounded && !e.cert))
      return kUnknown;
  return kYes;
}

int cmd_certify(const Flags& f) {
  CertFile cf = read_cert_file(slurp(f.file));
  std::cout << certify(cf, f.horizon) << "\n";
  return kYes;
}

int cmd_suite(const Flags& f) {
  Presentation p = parse_presentation(slurp(f.file));
  SuiteOptions o;
  o.seed = f.seed;
  o.samples = f.samples;
  o.budget = f.budget();
  auto rs = run_suites(p, o);
  std::cout << print_suites(rs);
  for (const auto& r : rs)
    if (!r.passed) return kError;
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finitely presented preordered semirings: proofs, asymptotics, spectra"};
  app.require_subcommand(1);
  Flags f;

  auto budget_flags = [&](CLI::App* c) {
    c->add_option("--budget-nodes", f.nodes, "rewrite steps per derivation");
    c->add_option("--budget-deg", f.degree, "total degree of intermediates");
    c->add_option("--budget-coef", f.coef, "coefficient bound of intermediates");
    c->add_flag("--serial", f.serial, "use the serial kernels");
  };
  auto pair_args = [&](CLI::App* c) {
    c->add_option("file", f.file, "presentation file")->required();
    c->add_option("lower", f.lhs)->required();
    c->add_option("upper", f.rhs)->required();
  };

  auto* check = app.add_subcommand("check", "preorder verdict for lower <= upper");
  pair_args(check);
  budget_flags(check);
  check->add_option("-o,--out", f.out, "certificate file");

  auto* asym = app.add_subcommand("asym", "asymptotic verdict for upper >~ lower");
  pair_args(asym);
  budget_flags(asym);
  asym->add_option("--horizon", f.horizon, "verification horizon");
  asym->add_option("-o,--out", f.out, "witness file");

  auto* sep = app.add_subcommand("separate", "spectral point with f(lower) > f(upper)");
  pair_args(sep);
  sep->add_option("--grid", f.grid, "points per parameter")->check(CLI::Range(2, 1000));
  sep->add_flag("--serial", f.serial, "use the serial kernels");

  auto* dual = app.add_subcommand("dual", "asymptotic search and separation together");
  pair_args(dual);
  budget_flags(dual);
  dual->add_option("--horizon", f.horizon, "verification horizon");
  dual->add_option("--grid", f.grid, "points per parameter")->check(CLI::Range(2, 1000));
  dual->add_option("-o,--out", f.out, "witness file");

  auto* member = app.add_subcommand("member", "membership in S+, S- or S_b");
  member->add_option("file", f.file)->required();
  member->add_option("kind", f.member_kind)->required()->check(CLI::IsMember({"splus", "sminus", "sb"}));
  member->add_option("element", f.lhs)->required();
  member->add_option("--bound", f.bound, "largest n tried")->check(CLI::Range(1, 1 << 20));
  budget_flags(member);
  member->add_option("-o,--out", f.out, "certificate file");

  auto* loc = app.add_subcommand("localize", "compare fractions over the mult_set");
  pair_args(loc);
  loc->add_option("mode", f.loc_mode)->required()->check(CLI::IsMember({"eq", "le"}));
  budget_flags(loc);
  loc->add_option("-o,--out", f.out, "certificate file");

  auto* conds = app.add_subcommand("conds", "M1/M2 condition reports");
  conds->add_option("file", f.file)->required();
  conds->add_option("cond", f.cond)->required()->check(CLI::IsMember({"m1", "m2", "m1p", "m2p"}));
  conds->add_option("--samples", f.samples, "total degree of monomial samples");
  conds->add_option("--grid", f.grid, "points per parameter")->check(CLI::Range(2, 1000));
  conds->add_option("--tset", f.tset, "comma-separated generators of T (default: mult_set)");
  budget_flags(conds);

  auto* cert = app.add_subcommand("certify", "replay a certificate or witness file");
  cert->add_option("file", f.file)->required();
  cert->add_option("--horizon", f.horizon, "witness replay horizon");

  auto* suite = app.add_subcommand("suite", "property suites against a presentation");
  suite->add_option("file", f.file)->required();
  suite->add_option("--seed", f.seed, "sampling seed");
  suite->add_option("--samples", f.samples, "random cases per suite");
  budget_flags(suite);

  f.samples = 0;  // per-command default below
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }
  if (f.samples == 0) f.samples = suite->parsed() ? SuiteOptions{}.samples : CondOptions{}.sample_degree;

  try {
    if (check->parsed()) return cmd_check(f);
    if (asym->parsed()) return cmd_asym(f);
    if (sep->parsed()) return cmd_separate(f);
    if (dual->parsed()) return cmd_dual(f);
    if (member->parsed()) return cmd_member(f);
    if (loc->parsed()) return cmd_localize(f);
    if (conds->parsed()) return cmd_conds(f);
    if (cert->parsed()) return cmd_certify(f);
    if (suite->parsed()) return cmd_suite(f);
  } catch (const ParseError& e) {
    std::cerr << f.file << ":" << e.line << ":" << e.column << ": " << e.message << "\n";
  } catch (const FormatError& e) {
    std::cerr << f.file << ":" << e.line << ": " << e.what() << "\n";
  } catch (const SoundnessError& e) {
    std::cerr << "soundness error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
