#include "psr/expr.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace psr {

Coef checked_add(Coef a, Coef b) {
  Coef r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("coefficient overflow in addition");
  return r;
}

Coef checked_mul(Coef a, Coef b) {
  Coef r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("coefficient overflow in multiplication");
  return r;
}

namespace {

std::uint32_t checked_exp_add(std::uint32_t a, std::uint32_t b) {
  std::uint32_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exponent overflow");
  return r;
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

Monomial Monomial::generator(std::size_t index, std::uint32_t power) {
  std::vector<std::uint32_t> e(index + 1, 0);
  e[index] = power;
  return Monomial(std::move(e));
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  std::vector<std::uint32_t> r(std::max(exps_.size(), o.exps_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_exp_add(exponent(i), o.exponent(i));
  return Monomial(std::move(r));
}

Monomial Monomial::pow(std::uint32_t k) const {
  std::vector<std::uint32_t> r(exps_);
  for (auto& e : r) {
    std::uint64_t v = std::uint64_t(e) * k;
    if (v > 0xffffffffu) throw OverflowError("exponent overflow");
    e = static_cast<std::uint32_t>(v);
  }
  return Monomial(std::move(r));
}

bool Monomial::divides(const Monomial& o) const {
  if (exps_.size() > o.exps_.size()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  std::vector<std::uint32_t> r(o.exps_);
  for (std::size_t i = 0; i < exps_.size(); ++i) r[i] -= exps_[i];
  return Monomial(std::move(r));
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  auto d1 = degree(), d2 = o.degree();
  if (d1 != d2) return d1 <=> d2;
  std::size_t n = std::max(exps_.size(), o.exps_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto a = exponent(i), b = o.exponent(i);
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto e : exps_) h = (h ^ e) * 0x100000001b3ull;
  return h;
}

// ---------------------------------------------------------------- Expr

Expr Expr::constant(Coef c) {
  Expr e;
  if (c != 0) e.terms_.push_back({Monomial(), c});
  return e;
}

Expr Expr::generator(std::size_t index) { return monomial(Monomial::generator(index)); }

Expr Expr::monomial(const Monomial& m, Coef c) {
  Expr e;
  if (c != 0) e.terms_.push_back({m, c});
  return e;
}

Expr Expr::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  Expr e;
  for (auto& t : terms) {
    if (t.coef == 0) continue;
    if (!e.terms_.empty() && e.terms_.back().mono == t.mono)
      e.terms_.back().coef = checked_add(e.terms_.back().coef, t.coef);
    else
      e.terms_.push_back(std::move(t));
  }
  return e;
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Coef Expr::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value of non-constant expression");
  return terms_.empty() ? 0 : terms_[0].coef;
}

std::uint64_t Expr::degree() const { return terms_.empty() ? 0 : terms_.back().mono.degree(); }

Coef Expr::max_coef() const {
  Coef m = 0;
  for (const auto& t : terms_) m = std::max(m, t.coef);
  return m;
}

Coef Expr::coef_of(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return t.mono < k; });
  return (it != terms_.end() && it->mono == m) ? it->coef : 0;
}

std::size_t Expr::arity() const {
  std::size_t a = 0;
  for (const auto& t : terms_) a = std::max(a, t.mono.size());
  return a;
}

Expr Expr::operator+(const Expr& o) const {
  Expr r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin(), j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->mono < j->mono)) {
      r.terms_.push_back(*i++);
    } else if (i == terms_.end() || j->mono < i->mono) {
      r.terms_.push_back(*j++);
    } else {
      r.terms_.push_back({i->mono, checked_add(i->coef, j->coef)});
      ++i;
      ++j;
    }
  }
  return r;
}

Expr Expr::operator*(const Expr& o) const {
  if (is_zero() || o.is_zero()) return Expr();
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) out.push_back({a.mono * b.mono, checked_mul(a.coef, b.coef)});
  return from_terms(std::move(out));
}

Expr Expr::pow(std::uint64_t k) const {
  Expr result = one(), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Expr Expr::scaled(Coef c) const {
  if (c == 0) return Expr();
  Expr r = *this;
  for (auto& t : r.terms_) t.coef = checked_mul(t.coef, c);
  return r;
}

Expr Expr::times(const Monomial& m, Coef c) const {
  if (c == 0) return Expr();
  Expr r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the graded order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, checked_mul(t.coef, c)});
  return r;
}

bool Expr::dominated_by(const Expr& o) const {
  auto j = o.terms_.begin();
  for (const auto& t : terms_) {
    while (j != o.terms_.end() && j->mono < t.mono) ++j;
    if (j == o.terms_.end() || !(j->mono == t.mono) || j->coef < t.coef) return false;
  }
  return true;
}

Expr Expr::minus(const Expr& rhs) const {
  Expr r;
  auto j = rhs.terms_.begin();
  for (const auto& t : terms_) {
    if (j != rhs.terms_.end() && j->mono == t.mono) {
      if (j->coef > t.coef) throw std::logic_error("Expr::minus: not dominated");
      if (j->coef < t.coef) r.terms_.push_back({t.mono, t.coef - j->coef});
      ++j;
    } else {
      r.terms_.push_back(t);
    }
  }
  if (j != rhs.terms_.end()) throw std::logic_error("Expr::minus: not dominated");
  return r;
}

std::strong_ordering Expr::operator<=>(const Expr& o) const {
  // Compare from the largest monomial down, so lower-degree expressions come first.
  auto i = terms_.rbegin(), j = o.terms_.rbegin();
  for (; i != terms_.rend() && j != o.terms_.rend(); ++i, ++j) {
    if (auto c = i->mono <=> j->mono; c != 0) return c;
    if (i->coef != j->coef) return i->coef <=> j->coef;
  }
  return terms_.size() <=> o.terms_.size();
}

std::size_t Expr::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& t : terms_) {
    h ^= t.mono.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<Coef>{}(t.coef) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------- normalize

Expr normalize(const ExprAst& ast, std::span<const std::string> names, std::uint64_t max_exponent) {
  switch (ast.kind) {
    case ExprAst::Kind::Literal:
      return Expr::constant(ast.literal);
    case ExprAst::Kind::Name: {
      auto it = std::find(names.begin(), names.end(), ast.name);
      if (it == names.end())
        throw NormalizeError("unknown generator '" + ast.name + "'", ast.line, ast.column);
      return Expr::generator(static_cast<std::size_t>(it - names.begin()));
    }
    case ExprAst::Kind::Add: {
      Expr r;
      for (const auto& c : ast.children) r += normalize(*c, names, max_exponent);
      return r;
    }
    case ExprAst::Kind::Mul: {
      Expr r = Expr::one();
      for (const auto& c : ast.children) r *= normalize(*c, names, max_exponent);
      return r;
    }
    case ExprAst::Kind::Pow: {
      if (ast.exponent > max_exponent)
        throw NormalizeError("exponent " + std::to_string(ast.exponent) + " exceeds bound " +
                                 std::to_string(max_exponent),
                             ast.line, ast.column);
      return normalize(*ast.children.at(0), names, max_exponent).pow(ast.exponent);
    }
  }
  throw std::logic_error("bad ExprAst kind");
}

// ---------------------------------------------------------------- printing

std::string to_string(const Monomial& m, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto e = m.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += i < names.size() ? names[i] : ("g" + std::to_string(i));
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Expr& e, std::span<const std::string> names) {
  if (e.is_zero()) return "0";
  std::string out;
  const auto& ts = e.terms();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    if (!out.empty()) out += " + ";
    if (it->mono.is_one()) {
      out += std::to_string(it->coef);
    } else {
      if (it->coef != 1) out += std::to_string(it->coef) + '*';
      out += to_string(it->mono, names);
    }
  }
  return out;
}

Rational evaluate(const Expr& e, std::span<const Rational> values) {
  Rational sum = 0;
  for (const auto& t : e.terms()) {
    Rational p = 1;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      auto k = t.mono.exponent(i);
      if (k == 0) continue;
      if (i >= values.size()) throw std::out_of_range("evaluate: generator without a value");
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), values[i].get_num_mpz_t(), k);
      mpz_pow_ui(den.get_mpz_t(), values[i].get_den_mpz_t(), k);
      Rational f(num, den);
      f.canonicalize();
      p *= f;
    }
    mpz_class c;
    mpz_set_ui(c.get_mpz_t(), t.coef);
    p *= c;
    sum += p;
  }
  return sum;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace psr
