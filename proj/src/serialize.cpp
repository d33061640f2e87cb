#include "psr/serialize.hpp"

#include <sstream>

#include "psr/parser.hpp"

namespace psr {

FormatError::FormatError(const std::string& msg, int line)
    : std::runtime_error(std::to_string(line) + ": " + msg), line(line) {}

namespace {

constexpr const char* kMagic = "psr-file";

// ------------------------------------------------------------------ writing

using Attrs = std::vector<std::pair<std::string, std::string>>;

class Writer {
 public:
  explicit Writer(const Presentation& p) : p_(p) {}

  void line(int depth, const std::string& head, const Attrs& attrs = {},
            const std::optional<std::pair<Expr, Expr>>& concl = std::nullopt) {
    os_ << std::string(static_cast<std::size_t>(2 * depth), ' ') << head;
    for (const auto& [k, v] : attrs) os_ << ' ' << k << "=[" << v << ']';
    if (concl) os_ << " : " << p_.str(concl->first) << " <= " << p_.str(concl->second);
    os_ << '\n';
  }
  std::string e(const Expr& x) const { return p_.str(x); }
  std::string str() const { return os_.str(); }

 private:
  const Presentation& p_;
  std::ostringstream os_;
};

std::string header(const Presentation& p, const char* kind) {
  std::string s = std::string(kMagic) + " kind=[" + kind + "]\nbegin presentation\n";
  s += print_presentation(p);
  return s + "end presentation\n";
}

std::string index_text(const Index& i) {
  return std::to_string(i.a) + ' ' + std::to_string(i.b) + ' ' + std::to_string(i.c) + ' ' + std::to_string(i.e) +
         ' ' + std::to_string(i.d);
}

std::string iexpr_text(const Writer& w, const IExpr& x) {
  std::string s;
  for (std::size_t i = 0; i < x.factors.size(); ++i)
    s += (i ? " ; " : "") + w.e(x.factors[i].base) + " @ " + index_text(x.factors[i].exp);
  return s;
}

std::string exps_text(const TWitness& t) {
  std::string s;
  for (std::size_t i = 0; i < t.exps.size(); ++i) s += (i ? " " : "") + std::to_string(t.exps[i]);
  return s;
}

void put_cert(Writer& w, const Certificate& c, int d) {
  const auto& n = c.node();
  Attrs a;
  switch (n.rule) {
    case Rule::Base: a.push_back({"index", std::to_string(n.index)}); break;
    case Rule::NatEmbed:
      a.push_back({"n", std::to_string(n.n)});
      a.push_back({"m", std::to_string(n.m)});
      break;
    case Rule::AddCong:
    case Rule::MulCong: a.push_back({"c", w.e(n.c)}); break;
    default: break;
  }
  w.line(d, rule_name(n.rule), a, std::pair{n.lhs, n.rhs});
  for (const auto& ch : n.children) put_cert(w, ch, d + 1);
}

void put_slot(Writer& w, const char* name, const Certificate& c, int d) {
  if (!c.valid()) return;
  w.line(d, std::string("@") + name);
  put_cert(w, c, d + 1);
}

const char* schema_kind_name(SchemaNode::Kind k) {
  switch (k) {
    case SchemaNode::Kind::Cert: return "cert";
    case SchemaNode::Kind::Refl: return "refl";
    case SchemaNode::Kind::Pow: return "pow";
    case SchemaNode::Kind::Mul: return "mul";
    case SchemaNode::Kind::Add: return "add";
    case SchemaNode::Kind::Trans: return "trans";
    case SchemaNode::Kind::Table: return "table";
    case SchemaNode::Kind::Reindex: return "reindex";
    case SchemaNode::Kind::Binomial: return "binomial";
    case SchemaNode::Kind::CancelChain: return "cancel_chain";
  }
  return "?";
}

void put_witness(Writer& w, const AsymptoticWitness& x, int d);

void put_schema(Writer& w, const Schema& s, int d) {
  const SchemaNode& n = *s;
  Attrs a{{"kind", schema_kind_name(n.kind)}};
  if (!(n.idx == Index{})) a.push_back({"idx", index_text(n.idx)});
  if (!(n.idx2 == Index{})) a.push_back({"idx2", index_text(n.idx2)});
  if (!n.operand.factors.empty()) a.push_back({"operand", iexpr_text(w, n.operand)});
  if (!n.z.is_zero()) a.push_back({"z", w.e(n.z)});
  if (n.K != 0) a.push_back({"K", std::to_string(n.K)});
  if (!n.u.is_zero()) a.push_back({"u", w.e(n.u)});
  if (!n.s.is_zero()) a.push_back({"s", w.e(n.s)});
  if (!n.X.factors.empty()) a.push_back({"X", iexpr_text(w, n.X)});
  if (!n.Y.factors.empty()) a.push_back({"Y", iexpr_text(w, n.Y)});
  w.line(d, "schema", a);
  put_slot(w, "cert", n.cert, d + 1);
  put_slot(w, "one_le_u", n.one_le_u, d + 1);
  put_slot(w, "dom", n.dom, d + 1);
  for (const auto& ch : n.children) {
    w.line(d + 1, "@child");
    put_schema(w, ch, d + 2);
  }
  for (const auto& c : n.table) put_slot(w, "table", c, d + 1);
  if (n.inner) {
    w.line(d + 1, "@inner");
    put_witness(w, *n.inner, d + 2);
  }
}

void put_witness(Writer& w, const AsymptoticWitness& x, int d) {
  w.line(d, "witness", {{"kind", kind_name(x.kind)}, {"u", w.e(x.u)}, {"x", w.e(x.x)}, {"y", w.e(x.y)}});
  for (const auto& e : x.entries) {
    w.line(d + 1, "entry",
           {{"residue", std::to_string(e.residue)}, {"modulus", std::to_string(e.modulus)}, {"K", std::to_string(e.K)}});
    put_schema(w, e.schema, d + 2);
  }
  for (const auto& h : x.horizon) {
    w.line(d + 1, "horizon", {{"n", std::to_string(h.n)}, {"k", std::to_string(h.k)}});
    put_cert(w, h.cert, d + 2);
  }
}

// ------------------------------------------------------------------ reading

struct Node {
  int line = 0;
  std::string head;
  Attrs attrs;
  std::optional<std::pair<std::string, std::string>> concl;
  std::vector<Node> children;

  const std::string* get(const std::string& k) const {
    for (const auto& [key, v] : attrs)
      if (key == k) return &v;
    return nullptr;
  }
  const std::string& need(const std::string& k) const {
    if (const auto* v = get(k)) return *v;
    throw FormatError("'" + head + "' line is missing " + k + "=[...]", line);
  }
};

Node parse_line(const std::string& text, int lineno) {
  Node n;
  n.line = lineno;
  std::size_t i = text.find_first_not_of(' ');
  std::size_t j = text.find(' ', i);
  n.head = text.substr(i, j == std::string::npos ? std::string::npos : j - i);
  i = j;
  while (i != std::string::npos && i < text.size()) {
    i = text.find_first_not_of(' ', i);
    if (i == std::string::npos) break;
    if (text[i] == ':') {
      std::string rest = text.substr(i + 1);
      auto k = rest.find(" <= ");
      if (k == std::string::npos) throw FormatError("conclusion must read 'lhs <= rhs'", lineno);
      n.concl = std::pair{rest.substr(0, k), rest.substr(k + 4)};
      break;
    }
    auto eq = text.find("=[", i);
    if (eq == std::string::npos) throw FormatError("expected key=[value]", lineno);
    auto close = text.find(']', eq);
    if (close == std::string::npos) throw FormatError("unterminated value", lineno);
    n.attrs.push_back({text.substr(i, eq - i), text.substr(eq + 2, close - eq - 2)});
    i = close + 1;
  }
  return n;
}

std::vector<Node> parse_tree(const std::vector<std::string>& lines, std::size_t from, int first_lineno) {
  std::vector<Node> roots;
  std::vector<std::pair<int, Node*>> stack;
  for (std::size_t k = from; k < lines.size(); ++k) {
    const std::string& t = lines[k];
    const int lineno = first_lineno + static_cast<int>(k - from);
    if (t.find_first_not_of(' ') == std::string::npos) continue;
    const auto indent = t.find_first_not_of(' ');
    if (indent % 2 != 0) throw FormatError("indentation must be a multiple of two spaces", lineno);
    const int depth = static_cast<int>(indent / 2);
    while (!stack.empty() && stack.back().first >= depth) stack.pop_back();
    Node n = parse_line(t, lineno);
    if (stack.empty()) {
      if (depth != 0) throw FormatError("unexpected indentation", lineno);
      roots.push_back(std::move(n));
      stack.push_back({0, &roots.back()});
    } else {
      if (depth != stack.back().first + 1) throw FormatError("unexpected indentation", lineno);
      auto& kids = stack.back().second->children;
      kids.push_back(std::move(n));
      stack.push_back({depth, &kids.back()});
    }
  }
  return roots;
}

class Reader {
 public:
  explicit Reader(const Presentation& p) : p_(p) {}

  Expr e(const std::string& text, int line) const {
    try {
      return parse_expr(text, p_.generators);
    } catch (const ParseError& err) {
      throw FormatError("bad expression '" + text + "': " + err.what(), line);
    }
  }

  std::uint64_t num(const std::string& text, int line) const {
    try {
      std::size_t pos = 0;
      auto v = std::stoull(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::logic_error&) {
      throw FormatError("bad number '" + text + "'", line);
    }
  }

  std::int64_t snum(const std::string& text, int line) const {
    try {
      std::size_t pos = 0;
      auto v = std::stoll(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::logic_error&) {
      throw FormatError("bad number '" + text + "'", line);
    }
  }

  Index index(const std::string& text, int line) const {
    std::istringstream is(text);
    std::string a, b, c, d, f, extra;
    if (!(is >> a >> b >> c >> d >> f) || (is >> extra)) throw FormatError("index needs five integers", line);
    Index i{snum(a, line), snum(b, line), snum(c, line), snum(d, line), snum(f, line)};
    if (i.d <= 0) throw FormatError("index divisor must be positive", line);
    return i;
  }

  IExpr iexpr(const std::string& text, int line) const {
    IExpr out;
    std::size_t i = 0;
    while (i <= text.size()) {
      auto j = text.find(" ; ", i);
      std::string part = text.substr(i, j == std::string::npos ? std::string::npos : j - i);
      auto at = part.find(" @ ");
      if (at == std::string::npos) throw FormatError("factor must read 'base @ index'", line);
      out.factors.push_back({e(part.substr(0, at), line), index(part.substr(at + 3), line)});
      if (j == std::string::npos) break;
      i = j + 3;
    }
    return out;
  }

  TWitness exps(const std::string& text, int line) const {
    TWitness t;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) t.exps.push_back(static_cast<std::uint32_t>(num(tok, line)));
    return t;
  }

  Certificate cert(const Node& n) const {
    static const std::vector<std::pair<std::string, Rule>> rules{
        {"refl", Rule::Refl}, {"zero_one", Rule::ZeroOne}, {"base", Rule::Base}, {"nat", Rule::NatEmbed},
        {"add", Rule::AddCong}, {"mul", Rule::MulCong}, {"trans", Rule::Trans}};
    auto it = std::find_if(rules.begin(), rules.end(), [&](const auto& r) { return r.first == n.head; });
    if (it == rules.end()) throw FormatError("unknown rule '" + n.head + "'", n.line);
    if (!n.concl) throw FormatError("rule line without a conclusion", n.line);
    std::size_t index = 0;
    Coef a = 0, b = 0;
    Expr c;
    if (it->second == Rule::Base) index = num(n.need("index"), n.line);
    if (it->second == Rule::NatEmbed) {
      a = num(n.need("n"), n.line);
      b = num(n.need("m"), n.line);
    }
    if (it->second == Rule::AddCong || it->second == Rule::MulCong) c = e(n.need("c"), n.line);
    std::vector<Certificate> kids;
    for (const auto& ch : n.children) kids.push_back(cert(ch));
    return Certificate::raw(it->second, e(n.concl->first, n.line), e(n.concl->second, n.line), index, a, b, c,
                            std::move(kids));
  }

  Certificate slot_cert(const Node& slot) const {
    if (slot.children.size() != 1) throw FormatError("'" + slot.head + "' needs exactly one certificate", slot.line);
    return cert(slot.children[0]);
  }

  Schema schema(const Node& n) const {
    if (n.head != "schema") throw FormatError("expected a schema line", n.line);
    static const std::vector<std::pair<std::string, SchemaNode::Kind>> kinds{
        {"cert", SchemaNode::Kind::Cert},       {"refl", SchemaNode::Kind::Refl},
        {"pow", SchemaNode::Kind::Pow},         {"mul", SchemaNode::Kind::Mul},
        {"add", SchemaNode::Kind::Add},         {"trans", SchemaNode::Kind::Trans},
        {"table", SchemaNode::Kind::Table},     {"reindex", SchemaNode::Kind::Reindex},
        {"binomial", SchemaNode::Kind::Binomial}, {"cancel_chain", SchemaNode::Kind::CancelChain}};
    const auto& k = n.need("kind");
    auto it = std::find_if(kinds.begin(), kinds.end(), [&](const auto& r) { return r.first == k; });
    if (it == kinds.end()) throw FormatError("unknown schema kind '" + k + "'", n.line);
    auto s = std::make_shared<SchemaNode>();
    s->kind = it->second;
    if (auto v = n.get("idx")) s->idx = index(*v, n.line);
    if (auto v = n.get("idx2")) s->idx2 = index(*v, n.line);
    if (auto v = n.get("operand")) s->operand = iexpr(*v, n.line);
    if (auto v = n.get("z")) s->z = e(*v, n.line);
    if (auto v = n.get("K")) s->K = num(*v, n.line);
    if (auto v = n.get("u")) s->u = e(*v, n.line);
    if (auto v = n.get("s")) s->s = e(*v, n.line);
    if (auto v = n.get("X")) s->X = iexpr(*v, n.line);
    if (auto v = n.get("Y")) s->Y = iexpr(*v, n.line);
    for (const auto& ch : n.children) {
      if (ch.head == "@cert") s->cert = slot_cert(ch);
      else if (ch.head == "@one_le_u") s->one_le_u = slot_cert(ch);
      else if (ch.head == "@dom") s->dom = slot_cert(ch);
      else if (ch.head == "@table") s->table.push_back(slot_cert(ch));
      else if (ch.head == "@child") {
        if (ch.children.size() != 1) throw FormatError("@child needs exactly one schema", ch.line);
        s->children.push_back(schema(ch.children[0]));
      } else if (ch.head == "@inner") {
        if (ch.children.size() != 1) throw FormatError("@inner needs exactly one witness", ch.line);
        s->inner = std::make_shared<const AsymptoticWitness>(witness(ch.children[0]));
      } else {
        throw FormatError("unexpected '" + ch.head + "' under a schema", ch.line);
      }
    }
    return s;
  }

  AsymptoticWitness witness(const Node& n) const {
    if (n.head != "witness") throw FormatError("expected a witness line", n.line);
    AsymptoticWitness w;
    const auto& k = n.need("kind");
    if (k == "ConstantK") w.kind = AsymptoticWitness::Kind::ConstantK;
    else if (k == "Periodic") w.kind = AsymptoticWitness::Kind::Periodic;
    else if (k == "Horizon") w.kind = AsymptoticWitness::Kind::Horizon;
    else throw FormatError("unknown witness kind '" + k + "'", n.line);
    w.u = e(n.need("u"), n.line);
    w.x = e(n.need("x"), n.line);
    w.y = e(n.need("y"), n.line);
    for (const auto& ch : n.children) {
      if (ch.head == "entry") {
        if (ch.children.size() != 1) throw FormatError("entry needs exactly one schema", ch.line);
        EnvelopeEntry en{num(ch.need("residue"), ch.line), num(ch.need("modulus"), ch.line),
                         num(ch.need("K"), ch.line), schema(ch.children[0])};
        if (en.modulus == 0) throw FormatError("modulus must be positive", ch.line);
        w.entries.push_back(std::move(en));
      } else if (ch.head == "horizon") {
        w.horizon.push_back({num(ch.need("n"), ch.line), num(ch.need("k"), ch.line), slot_cert(ch)});
      } else {
        throw FormatError("unexpected '" + ch.head + "' under a witness", ch.line);
      }
    }
    return w;
  }

  std::pair<Fraction, int> fraction(const Node& n, const std::string& key) const {
    const auto& text = n.need(key);
    std::pair<Expr, Expr> f;
    try {
      f = parse_fraction(text, p_.generators);
    } catch (const ParseError& err) {
      throw FormatError("bad fraction '" + text + "': " + err.what(), n.line);
    }
    return {Fraction{f.first, f.second, exps(n.need(key + "_w"), n.line)}, n.line};
  }

  const Presentation& p_;
};

const Node& only_root(const std::vector<Node>& roots, const char* head, int line) {
  if (roots.size() != 1) throw FormatError("expected exactly one top-level entry", line);
  if (roots[0].head != head && std::string(head) != "*")
    throw FormatError(std::string("expected a '") + head + "' entry", roots[0].line);
  return roots[0];
}

}  // namespace

std::string write_certificate(const Presentation& p, const Certificate& c) {
  Writer w(p);
  put_cert(w, c, 0);
  return header(p, "certificate") + w.str();
}

std::string write_witness(const Presentation& p, const AsymptoticWitness& x) {
  Writer w(p);
  put_witness(w, x, 0);
  return header(p, "witness") + w.str();
}

std::string write_membership(const Presentation& p, const MembershipCertificate& mc) {
  Writer w(p);
  Attrs a{{"kind", member_name(mc.kind)}, {"s", w.e(mc.s)}, {"n", std::to_string(mc.n)}};
  if (mc.zero) a.push_back({"zero", "1"});
  w.line(0, "membership", a);
  put_slot(w, "plus", mc.plus, 1);
  put_slot(w, "minus", mc.minus, 1);
  return header(p, "membership") + w.str();
}

std::string write_ext(const Presentation& p, const ExtRelations& R, const ExtCertificate& ec) {
  Writer w(p);
  w.line(0, "ext", {{"a", w.e(ec.a)}, {"b", w.e(ec.b)}});
  for (const auto& r : R.pairs) w.line(1, "pair", {}, std::pair{r.lhs, r.rhs});
  if (R.rf) {
    w.line(1, "rf");
    for (std::size_t i = 0; i < R.rf->subgens.size(); ++i)
      w.line(2, "subgen", {{"e", w.e(R.rf->subgens[i])}, {"value", to_string(R.rf->values[i])}});
  }
  for (const auto& t : ec.triples) w.line(1, "triple", {{"s", w.e(t.s)}}, std::pair{t.x, t.y});
  put_slot(w, "inner", ec.inner, 1);
  return header(p, "ext") + w.str();
}

std::string write_loc(const Presentation& p, const LocClaim& claim) {
  Writer w(p);
  auto frac = [&](const Fraction& f) { return w.e(f.num) + " / " + w.e(f.den); };
  w.line(0, "loc",
         {{"claim", claim.eq ? "eq" : "le"},
          {"a", frac(claim.a)},
          {"a_w", exps_text(claim.a.den_w)},
          {"b", frac(claim.b)},
          {"b_w", exps_text(claim.b.den_w)},
          {"r", w.e(claim.cert.r)},
          {"r_w", exps_text(claim.cert.r_w)}});
  if (!claim.eq) put_slot(w, "inner", claim.cert.inner, 1);
  return header(p, "loc") + w.str();
}

CertFile read_cert_file(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) lines.push_back(l);
  }
  if (lines.empty()) throw FormatError("empty file", 1);
  Node head = parse_line(lines[0], 1);
  if (head.head != kMagic) throw FormatError(std::string("file must start with '") + kMagic + "'", 1);
  const std::string kind = head.need("kind");
  if (lines.size() < 2 || lines[1] != "begin presentation") throw FormatError("expected 'begin presentation'", 2);
  std::size_t end = 2;
  while (end < lines.size() && lines[end] != "end presentation") ++end;
  if (end == lines.size()) throw FormatError("missing 'end presentation'", static_cast<int>(lines.size()));
  std::string ptext;
  for (std::size_t i = 2; i < end; ++i) ptext += lines[i] + "\n";

  CertFile f;
  try {
    f.presentation = parse_presentation(ptext);
  } catch (const ParseError& err) {
    throw FormatError(std::string("embedded presentation: ") + err.what(), err.line + 2);
  }
  const int first = static_cast<int>(end) + 2;
  auto roots = parse_tree(lines, end + 1, first);
  Reader rd(f.presentation);
  if (kind == "certificate") {
    f.kind = CertFile::Kind::Certificate;
    f.cert = rd.cert(only_root(roots, "*", first));
  } else if (kind == "witness") {
    f.kind = CertFile::Kind::Witness;
    f.witness = rd.witness(only_root(roots, "witness", first));
  } else if (kind == "membership") {
    f.kind = CertFile::Kind::Membership;
    const Node& n = only_root(roots, "membership", first);
    MembershipCertificate mc;
    const auto& k = n.need("kind");
    if (k == "splus") mc.kind = MemberKind::Plus;
    else if (k == "sminus") mc.kind = MemberKind::Minus;
    else if (k == "sb") mc.kind = MemberKind::Bounded;
    else throw FormatError("unknown membership kind '" + k + "'", n.line);
    mc.s = rd.e(n.need("s"), n.line);
    mc.n = rd.num(n.need("n"), n.line);
    mc.zero = n.get("zero") != nullptr;
    for (const auto& ch : n.children) {
      if (ch.head == "@plus") mc.plus = rd.slot_cert(ch);
      else if (ch.head == "@minus") mc.minus = rd.slot_cert(ch);
      else throw FormatError("unexpected '" + ch.head + "' under membership", ch.line);
    }
    f.membership = std::move(mc);
  } else if (kind == "ext") {
    f.kind = CertFile::Kind::Ext;
    const Node& n = only_root(roots, "ext", first);
    ExtRelations R;
    ExtCertificate ec;
    ec.a = rd.e(n.need("a"), n.line);
    ec.b = rd.e(n.need("b"), n.line);
    for (const auto& ch : n.children) {
      if (ch.head == "pair" && ch.concl) {
        R.pairs.push_back({rd.e(ch.concl->first, ch.line), rd.e(ch.concl->second, ch.line)});
      } else if (ch.head == "rf") {
        RfSpec rf;
        for (const auto& sg : ch.children) {
          rf.subgens.push_back(rd.e(sg.need("e"), sg.line));
          try {
            rf.values.push_back(parse_rational(sg.need("value")));
          } catch (const ParseError& err) {
            throw FormatError(err.what(), sg.line);
          }
        }
        R.rf = std::move(rf);
      } else if (ch.head == "triple" && ch.concl) {
        ec.triples.push_back({rd.e(ch.need("s"), ch.line), rd.e(ch.concl->first, ch.line),
                              rd.e(ch.concl->second, ch.line)});
      } else if (ch.head == "@inner") {
        ec.inner = rd.slot_cert(ch);
      } else {
        throw FormatError("unexpected '" + ch.head + "' under ext", ch.line);
      }
    }
    f.relations = std::move(R);
    f.ext = std::move(ec);
  } else if (kind == "loc") {
    f.kind = CertFile::Kind::Loc;
    const Node& n = only_root(roots, "loc", first);
    LocClaim c;
    const auto& claim = n.need("claim");
    if (claim != "eq" && claim != "le") throw FormatError("claim must be eq or le", n.line);
    c.eq = claim == "eq";
    c.a = rd.fraction(n, "a").first;
    c.b = rd.fraction(n, "b").first;
    c.cert.r = rd.e(n.need("r"), n.line);
    c.cert.r_w = rd.exps(n.need("r_w"), n.line);
    for (const auto& ch : n.children) {
      if (ch.head == "@inner") c.cert.inner = rd.slot_cert(ch);
      else throw FormatError("unexpected '" + ch.head + "' under loc", ch.line);
    }
    if (!c.eq && !c.cert.inner.valid()) throw FormatError("le claim needs an @inner certificate", n.line);
    f.loc = std::move(c);
  } else {
    throw FormatError("unknown file kind '" + kind + "'", 1);
  }
  return f;
}

std::string certify(const CertFile& f, std::uint64_t horizon) {
  const Presentation& p = f.presentation;
  switch (f.kind) {
    case CertFile::Kind::Certificate: {
      auto [l, r] = replay(p, f.cert);
      return "verified: " + p.str(l) + " <= " + p.str(r);
    }
    case CertFile::Kind::Witness: {
      const auto& w = *f.witness;
      verify_witness(p, w, horizon);
      if (!w.claims_asymptotic())
        return "verified evidence only (" + std::to_string(w.horizon.size()) + " instances): " + p.str(w.x) +
               " >~ " + p.str(w.y) + " not claimed";
      return std::string("verified: ") + p.str(w.x) + " >~ " + p.str(w.y) + " with u = " + p.str(w.u) + ", " +
             kind_name(w.kind) + " envelope, max K " + std::to_string(w.max_K()) + ", checked for n <= " +
             std::to_string(horizon);
    }
    case CertFile::Kind::Membership: {
      const auto& mc = *f.membership;
      replay_membership(p, mc);
      return std::string("verified: ") + p.str(mc.s) + " in " + member_name(mc.kind) +
             (mc.zero ? " (by definition)" : " with n = " + std::to_string(mc.n));
    }
    case CertFile::Kind::Ext: {
      auto [a, b] = replay_ext(p, *f.relations, *f.ext);
      return "verified: " + p.str(a) + " <=_R " + p.str(b);
    }
    case CertFile::Kind::Loc: {
      Localization L(p, p.mult_set);
      const auto& c = *f.loc;
      if (c.eq) L.replay_eq(c.a, c.b, c.cert);
      else L.replay_le(c.a, c.b, c.cert);
      return "verified: " + p.str(c.a.num) + " / " + p.str(c.a.den) + (c.eq ? " = " : " <= ") + p.str(c.b.num) +
             " / " + p.str(c.b.den) + " with r = " + p.str(c.cert.r);
    }
  }
  return {};
}

}  // namespace psr
