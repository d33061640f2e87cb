#include "psr/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace psr {

ParseError::ParseError(const std::string& msg, int l, int c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
      line(l),
      column(c),
      message(msg) {}

namespace {

struct Token {
  enum class Kind { Name, Int, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  bool at_sym(const char* s) const { return tok_.kind == Token::Kind::Sym && tok_.text == s; }
  bool at_name(const char* s) const { return tok_.kind == Token::Kind::Name && tok_.text == s; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.line, tok_.column); }

  Token expect_sym(const char* s) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "' but found " + describe(tok_));
    return next();
  }

  Token expect_name() {
    if (tok_.kind != Token::Kind::Name) fail("expected a name but found " + describe(tok_));
    return next();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::End: return "end of input";
      case Token::Kind::Int: return "number '" + t.text + "'";
      case Token::Kind::Name: return "name '" + t.text + "'";
      case Token::Kind::Sym: return "'" + t.text + "'";
    }
    return "?";
  }

 private:
  void advance() {
    skip_space();
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= src_.size()) return;
    unsigned char ch = static_cast<unsigned char>(src_[pos_]);
    if (std::isdigit(ch)) {
      tok_.kind = Token::Kind::Int;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) take();
      return;
    }
    if (std::isalpha(ch) || ch == '_') {
      tok_.kind = Token::Kind::Name;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        take();
      return;
    }
    tok_.kind = Token::Kind::Sym;
    for (const char* two : {"<=", ">="}) {
      if (src_.compare(pos_, 2, two) == 0) {
        take();
        take();
        return;
      }
    }
    static const std::string singles = "+*^()[]{},;:=/-";
    if (singles.find(static_cast<char>(ch)) == std::string::npos) {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(ch) + "'", line_, col_);
    }
    take();
  }

  void take() {
    tok_.text += src_[pos_];
    bump();
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

Coef parse_int(const Token& t) {
  Coef v = 0;
  for (char c : t.text) {
    Coef d = static_cast<Coef>(c - '0');
    Coef next;
    if (__builtin_mul_overflow(v, Coef(10), &next) || __builtin_add_overflow(next, d, &next))
      throw ParseError("integer literal too large", t.line, t.column);
    v = next;
  }
  return v;
}

ExprAstPtr make(ExprAst::Kind k, const Token& at) {
  auto a = std::make_shared<ExprAst>();
  a->kind = k;
  a->line = at.line;
  a->column = at.column;
  return a;
}

class ExprParser {
 public:
  explicit ExprParser(Lexer& lx) : lx_(lx) {}

  ExprAstPtr sum() {
    Token start = lx_.peek();
    std::vector<ExprAstPtr> parts{product()};
    while (lx_.at_sym("+")) {
      lx_.next();
      parts.push_back(product());
    }
    if (parts.size() == 1) return parts[0];
    auto a = make(ExprAst::Kind::Add, start);
    const_cast<ExprAst&>(*a).children = std::move(parts);
    return a;
  }

  ExprAstPtr product() {
    Token start = lx_.peek();
    std::vector<ExprAstPtr> parts{power()};
    while (true) {
      if (lx_.at_sym("*")) {
        lx_.next();
        parts.push_back(power());
      } else if (starts_atom()) {
        parts.push_back(power());
      } else {
        break;
      }
    }
    if (parts.size() == 1) return parts[0];
    auto a = make(ExprAst::Kind::Mul, start);
    const_cast<ExprAst&>(*a).children = std::move(parts);
    return a;
  }

  ExprAstPtr power() {
    Token start = lx_.peek();
    auto base = atom();
    while (lx_.at_sym("^")) {
      lx_.next();
      Token e = lx_.peek();
      if (e.kind != Token::Kind::Int) lx_.fail("expected an integer exponent but found " + Lexer::describe(e));
      lx_.next();
      auto p = make(ExprAst::Kind::Pow, start);
      auto& pm = const_cast<ExprAst&>(*p);
      pm.exponent = parse_int(e);
      pm.children = {base};
      base = p;
    }
    return base;
  }

  bool starts_atom() const {
    const auto& t = lx_.peek();
    return t.kind == Token::Kind::Int || t.kind == Token::Kind::Name || lx_.at_sym("(");
  }

  ExprAstPtr atom() {
    Token t = lx_.peek();
    if (t.kind == Token::Kind::Int) {
      lx_.next();
      auto a = make(ExprAst::Kind::Literal, t);
      const_cast<ExprAst&>(*a).literal = parse_int(t);
      return a;
    }
    if (t.kind == Token::Kind::Name) {
      lx_.next();
      auto a = make(ExprAst::Kind::Name, t);
      const_cast<ExprAst&>(*a).name = t.text;
      return a;
    }
    if (lx_.at_sym("(")) {
      lx_.next();
      auto inner = sum();
      lx_.expect_sym(")");
      return inner;
    }
    lx_.fail("expected an expression but found " + Lexer::describe(t));
  }

 private:
  Lexer& lx_;
};

Expr to_expr(const ExprAstPtr& ast, std::span<const std::string> names) {
  try {
    return normalize(*ast, names);
  } catch (const NormalizeError& e) {
    throw ParseError(e.what(), e.line, e.column);
  } catch (const OverflowError& e) {
    throw ParseError(e.what(), ast->line, ast->column);
  }
}

Rational rational_literal(Lexer& lx) {
  Token a = lx.peek();
  if (a.kind != Token::Kind::Int) lx.fail("expected a rational number but found " + Lexer::describe(a));
  lx.next();
  mpz_class num(a.text);
  mpz_class den = 1;
  if (lx.at_sym("/")) {
    lx.next();
    Token b = lx.peek();
    if (b.kind != Token::Kind::Int) lx.fail("expected a denominator but found " + Lexer::describe(b));
    lx.next();
    den = mpz_class(b.text);
    if (den == 0) throw ParseError("zero denominator", b.line, b.column);
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

class PresentationParser {
 public:
  explicit PresentationParser(const std::string& text) : lx_(text) {}

  Presentation run() {
    while (lx_.peek().kind != Token::Kind::End) statement();
    if (!seen_.count("generators")) p_.generators = {};
    return p_;
  }

 private:
  void once(const Token& at, const std::string& section) {
    if (!seen_.insert(section).second)
      throw ParseError("duplicate section '" + section + "'", at.line, at.column);
  }

  Expr expr() { return to_expr(ExprParser(lx_).sum(), p_.generators); }

  void statement() {
    Token head = lx_.expect_name();
    const std::string& kw = head.text;
    if (kw == "family") {
      once(head, "family");
      family();
      return;
    }
    lx_.expect_sym(":");
    if (kw == "generators") {
      once(head, "generators");
      if (!p_.relations.empty() || p_.power_universal || !p_.mult_set.empty() || p_.m_set)
        throw ParseError("generators must be declared before use", head.line, head.column);
      // An empty list presents N itself.
      if (lx_.at_sym(";")) {
        lx_.next();
        return;
      }
      do {
        Token n = lx_.expect_name();
        if (std::find(p_.generators.begin(), p_.generators.end(), n.text) != p_.generators.end())
          throw ParseError("generator '" + n.text + "' declared twice", n.line, n.column);
        if (n.text == "inf" || n.text == "all" || n.text == "list" || n.text == "where")
          throw ParseError("reserved word '" + n.text + "' used as generator", n.line, n.column);
        p_.generators.push_back(n.text);
      } while (lx_.at_sym(",") && (lx_.next(), true));
    } else if (kw == "relation") {
      Expr l = expr();
      lx_.expect_sym("<=");
      Expr r = expr();
      p_.relations.push_back({l, r});
    } else if (kw == "power_universal") {
      once(head, "power_universal");
      p_.power_universal = expr();
    } else if (kw == "mult_set") {
      once(head, "mult_set");
      do {
        Token at = lx_.peek();
        Expr e = expr();
        if (e.is_zero()) throw ParseError("multiplicative set generator is zero", at.line, at.column);
        p_.mult_set.push_back(e);
      } while (lx_.at_sym(",") && (lx_.next(), true));
    } else if (kw == "m_set") {
      once(head, "m_set");
      p_.m_set = m_set();
    } else {
      throw ParseError("unknown section '" + kw + "'", head.line, head.column);
    }
    lx_.expect_sym(";");
  }

  MonomialSet m_set() {
    MonomialSet m;
    Token t = lx_.expect_name();
    if (t.text == "all") {
      m.kind = MonomialSet::Kind::All;
    } else if (t.text == "list") {
      m.kind = MonomialSet::Kind::List;
      do {
        Token at = lx_.peek();
        Expr e = expr();
        if (e.terms().size() != 1 || e.terms()[0].coef != 1)
          throw ParseError("m_set list entries must be monomials", at.line, at.column);
        m.list.push_back(e);
      } while (lx_.at_sym(",") && (lx_.next(), true));
      std::sort(m.list.begin(), m.list.end());
      m.list.erase(std::unique(m.list.begin(), m.list.end()), m.list.end());
    } else if (t.text == "where") {
      m.kind = MonomialSet::Kind::Where;
      do {
        ExponentConstraint c;
        linear(c.lhs, c.lhs_const);
        Token op = lx_.peek();
        if (lx_.at_sym("<=")) c.op = ExponentConstraint::Op::Le;
        else if (lx_.at_sym(">=")) c.op = ExponentConstraint::Op::Ge;
        else if (lx_.at_sym("=")) c.op = ExponentConstraint::Op::Eq;
        else lx_.fail("expected <=, >= or = but found " + Lexer::describe(op));
        lx_.next();
        linear(c.rhs, c.rhs_const);
        m.where.push_back(c);
      } while (lx_.at_sym(",") && (lx_.next(), true));
    } else {
      throw ParseError("m_set must be 'all', 'list ...' or 'where ...'", t.line, t.column);
    }
    return m;
  }

  void linear(std::vector<std::int64_t>& coefs, std::int64_t& constant) {
    coefs.assign(p_.generators.size(), 0);
    constant = 0;
    std::int64_t sign = 1;
    if (lx_.at_sym("-")) {
      lx_.next();
      sign = -1;
    }
    while (true) {
      std::int64_t k = 1;
      bool have_k = false;
      if (lx_.peek().kind == Token::Kind::Int) {
        Token n = lx_.next();
        Coef v = parse_int(n);
        if (v > (Coef(1) << 40)) throw ParseError("coefficient too large", n.line, n.column);
        k = static_cast<std::int64_t>(v);
        have_k = true;
        if (lx_.at_sym("*")) lx_.next();
      }
      if (lx_.peek().kind == Token::Kind::Name) {
        Token n = lx_.next();
        auto it = std::find(p_.generators.begin(), p_.generators.end(), n.text);
        if (it == p_.generators.end())
          throw ParseError("unknown generator '" + n.text + "'", n.line, n.column);
        coefs[static_cast<std::size_t>(it - p_.generators.begin())] += sign * k;
      } else if (have_k) {
        constant += sign * k;
      } else {
        lx_.fail("expected a linear term but found " + Lexer::describe(lx_.peek()));
      }
      if (lx_.at_sym("+")) sign = 1;
      else if (lx_.at_sym("-")) sign = -1;
      else break;
      lx_.next();
    }
  }

  void family() {
    HomFamily fam;
    std::set<std::string> seen_local;
    lx_.expect_sym("{");
    std::vector<bool> have_value(p_.generators.size(), false);
    fam.values.resize(p_.generators.size());
    while (!lx_.at_sym("}")) {
      Token head = lx_.expect_name();
      if (head.text == "param") {
        Parameter prm;
        Token n = lx_.expect_name();
        prm.name = n.text;
        for (const auto& q : fam.params)
          if (q.name == prm.name) throw ParseError("parameter '" + prm.name + "' declared twice", n.line, n.column);
        if (std::find(p_.generators.begin(), p_.generators.end(), prm.name) != p_.generators.end())
          throw ParseError("parameter '" + prm.name + "' shadows a generator", n.line, n.column);
        Token in = lx_.expect_name();
        if (in.text != "in") throw ParseError("expected 'in'", in.line, in.column);
        if (lx_.at_sym("(")) {
          prm.lo_open = true;
          lx_.next();
        } else {
          lx_.expect_sym("[");
        }
        prm.lo = rational_literal(lx_);
        lx_.expect_sym(",");
        Token hi_at = lx_.peek();
        if (lx_.at_name("inf")) {
          lx_.next();
          prm.hi_infinite = true;
          prm.hi = 0;
          lx_.expect_sym(")");
        } else {
          prm.hi = rational_literal(lx_);
          if (lx_.at_sym(")")) {
            prm.hi_open = true;
            lx_.next();
          } else {
            lx_.expect_sym("]");
          }
          if (prm.hi < prm.lo || (prm.hi == prm.lo && (prm.lo_open || prm.hi_open)))
            throw ParseError("empty parameter range", hi_at.line, hi_at.column);
        }
        fam.params.push_back(prm);
      } else if (head.text == "constraint") {
        lx_.expect_sym(":");
        auto names = fam.param_names();
        Expr l = to_expr(ExprParser(lx_).sum(), names);
        lx_.expect_sym("<=");
        Expr r = to_expr(ExprParser(lx_).sum(), names);
        fam.constraints.push_back({l, r});
      } else if (head.text == "value") {
        Token g = lx_.expect_name();
        auto it = std::find(p_.generators.begin(), p_.generators.end(), g.text);
        if (it == p_.generators.end())
          throw ParseError("unknown generator '" + g.text + "'", g.line, g.column);
        auto idx = static_cast<std::size_t>(it - p_.generators.begin());
        if (have_value[idx]) throw ParseError("value for '" + g.text + "' given twice", g.line, g.column);
        lx_.expect_sym("=");
        auto names = fam.param_names();
        RatFun f;
        ExprParser ep(lx_);
        f.num = to_expr(ep.sum(), names);
        if (lx_.at_sym("/")) {
          Token at = lx_.next();
          f.den = to_expr(ep.power(), names);
          if (f.den.is_zero()) throw ParseError("zero denominator", at.line, at.column);
        }
        fam.values[idx] = f;
        have_value[idx] = true;
      } else if (head.text == "floor") {
        if (!seen_local.insert("floor").second)
          throw ParseError("duplicate 'floor'", head.line, head.column);
        lx_.expect_sym(":");
        Token at = lx_.peek();
        fam.floor = rational_literal(lx_);
        if (fam.floor <= 0) throw ParseError("floor must be positive", at.line, at.column);
      } else {
        throw ParseError("unknown family entry '" + head.text + "'", head.line, head.column);
      }
      lx_.expect_sym(";");
    }
    Token close = lx_.expect_sym("}");
    for (std::size_t i = 0; i < have_value.size(); ++i)
      if (!have_value[i])
        throw ParseError("family gives no value for generator '" + p_.generators[i] + "'", close.line,
                         close.column);
    p_.family = std::move(fam);
  }

  Lexer lx_;
  Presentation p_;
  std::set<std::string> seen_;
};

std::string print_linear(const std::vector<std::int64_t>& coefs, std::int64_t c,
                         const std::vector<std::string>& names) {
  std::string out;
  auto emit = [&](std::int64_t k, const std::string& name) {
    if (k == 0) return;
    if (out.empty()) {
      if (k < 0) out += "-";
    } else {
      out += k < 0 ? " - " : " + ";
    }
    auto a = k < 0 ? -k : k;
    if (name.empty()) out += std::to_string(a);
    else out += (a == 1 ? "" : std::to_string(a) + "*") + name;
  };
  for (std::size_t i = 0; i < coefs.size(); ++i) emit(coefs[i], names[i]);
  emit(c, "");
  return out.empty() ? "0" : out;
}

std::string print_ratfun(const RatFun& f, const std::vector<std::string>& names) {
  std::string num = to_string(f.num, names);
  if (f.den == Expr::one()) return num;
  if (f.num.terms().size() > 1) num = "(" + num + ")";
  return num + " / (" + to_string(f.den, names) + ")";
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  try {
    return PresentationParser(text).run();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

std::string print_presentation(const Presentation& p) {
  std::ostringstream os;
  const auto& g = p.generators;
  os << "generators: ";
  for (std::size_t i = 0; i < g.size(); ++i) os << (i ? ", " : "") << g[i];
  os << ";\n";
  for (const auto& r : p.relations) os << "relation: " << p.str(r.lhs) << " <= " << p.str(r.rhs) << ";\n";
  if (p.power_universal) os << "power_universal: " << p.str(*p.power_universal) << ";\n";
  if (!p.mult_set.empty()) {
    os << "mult_set: ";
    for (std::size_t i = 0; i < p.mult_set.size(); ++i) os << (i ? ", " : "") << p.str(p.mult_set[i]);
    os << ";\n";
  }
  if (p.m_set) {
    const auto& m = *p.m_set;
    os << "m_set: ";
    if (m.kind == MonomialSet::Kind::All) {
      os << "all";
    } else if (m.kind == MonomialSet::Kind::List) {
      os << "list ";
      for (std::size_t i = 0; i < m.list.size(); ++i) os << (i ? ", " : "") << p.str(m.list[i]);
    } else {
      os << "where ";
      for (std::size_t i = 0; i < m.where.size(); ++i) {
        const auto& c = m.where[i];
        const char* op = c.op == ExponentConstraint::Op::Le ? "<=" : c.op == ExponentConstraint::Op::Ge ? ">=" : "=";
        os << (i ? ", " : "") << print_linear(c.lhs, c.lhs_const, g) << ' ' << op << ' '
           << print_linear(c.rhs, c.rhs_const, g);
      }
    }
    os << ";\n";
  }
  if (p.family) {
    const auto& f = *p.family;
    auto names = f.param_names();
    os << "family {\n";
    for (const auto& prm : f.params) {
      os << "  param " << prm.name << " in " << (prm.lo_open ? '(' : '[') << to_string(prm.lo) << ", ";
      if (prm.hi_infinite) os << "inf)";
      else os << to_string(prm.hi) << (prm.hi_open ? ')' : ']');
      os << ";\n";
    }
    for (const auto& c : f.constraints)
      os << "  constraint: " << to_string(c.lhs, names) << " <= " << to_string(c.rhs, names) << ";\n";
    for (std::size_t i = 0; i < f.values.size(); ++i)
      os << "  value " << g[i] << " = " << print_ratfun(f.values[i], names) << ";\n";
    os << "  floor: " << to_string(f.floor) << ";\n";
    os << "}\n";
  }
  return os.str();
}

ExprAstPtr parse_expr_ast(const std::string& text) {
  Lexer lx(text);
  auto ast = ExprParser(lx).sum();
  if (lx.peek().kind != Token::Kind::End) lx.fail("unexpected " + Lexer::describe(lx.peek()));
  return ast;
}

Expr parse_expr(const std::string& text, std::span<const std::string> names) {
  return to_expr(parse_expr_ast(text), names);
}

std::pair<Expr, Expr> parse_fraction(const std::string& text, std::span<const std::string> names) {
  Lexer lx(text);
  ExprParser ep(lx);
  Expr num = to_expr(ep.sum(), names);
  Expr den = Expr::one();
  if (lx.at_sym("/")) {
    lx.next();
    den = to_expr(ep.sum(), names);
  }
  if (lx.peek().kind != Token::Kind::End) lx.fail("unexpected " + Lexer::describe(lx.peek()));
  return {num, den};
}

Rational parse_rational(const std::string& text) {
  Lexer lx(text);
  Rational q = rational_literal(lx);
  if (lx.peek().kind != Token::Kind::End) lx.fail("unexpected " + Lexer::describe(lx.peek()));
  return q;
}

Expr Presentation::expr(const std::string& text) const { return parse_expr(text, generators); }

}  // namespace psr
