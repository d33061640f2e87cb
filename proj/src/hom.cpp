#include "psr/hom.hpp"

namespace psr {

Rational eval(const Hom& f, const Expr& x) { return evaluate(x, f.values); }

bool verify_hom(const Presentation& p, const Hom& f) {
  if (f.values.size() != p.arity()) return false;
  for (const auto& v : f.values)
    if (v < 0) return false;
  for (const auto& r : p.relations)
    if (eval(f, r.lhs) > eval(f, r.rhs)) return false;
  return true;
}

bool monotone_along(const Hom& f, const Certificate& c) {
  bool ok = true;
  for_each_conclusion(c, [&](const Expr& a, const Expr& b) {
    if (ok && eval(f, a) > eval(f, b)) ok = false;
  });
  return ok;
}

std::string to_string(const Hom& f, const Presentation& p) {
  std::string s;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i) s += ", ";
    s += (i < p.generators.size() ? p.generators[i] : "?") + "=" + to_string(f.values[i]);
  }
  return s;
}

std::vector<Hom> default_valuations(const Presentation& p) {
  static const Rational choices[] = {Rational(1), Rational(0), Rational(2), Rational(1, 2)};
  std::vector<Hom> out;
  const std::size_t k = p.arity();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k && total <= 4096; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    Hom f;
    std::size_t c = code;
    for (std::size_t i = 0; i < k; ++i, c /= 4) f.values.push_back(choices[c % 4]);
    if (verify_hom(p, f)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace psr
