#pragma once

// Spectral points as exact-rational generator valuations.

#include <string>
#include <vector>

#include "psr/certificate.hpp"
#include "psr/presentation.hpp"

namespace psr {

struct Hom {
  std::vector<Rational> values;  // one per generator, all >= 0
  bool operator==(const Hom&) const = default;
};

/// Throws std::out_of_range if x mentions a generator without a value.
Rational eval(const Hom& f, const Expr& x);

/// f(lhs) <= f(rhs) for every base relation, all values nonnegative and
/// every generator covered.
bool verify_hom(const Presentation& p, const Hom& f);

/// f(lhs) <= f(rhs) at every node of the derivation.
bool monotone_along(const Hom& f, const Certificate& c);

std::string to_string(const Hom& f, const Presentation& p);

/// Verified valuations with each generator in {1, 0, 2, 1/2}, in that
/// enumeration order. Used to refute goals when no family is attached.
std::vector<Hom> default_valuations(const Presentation& p);

}  // namespace psr
