#pragma once

// Grid-and-refine search for a separating spectral point in a family.

#include <optional>
#include <vector>

#include "psr/hom.hpp"
#include "psr/kernels.hpp"

namespace psr {

struct SeparateOptions {
  std::size_t grid = 9;  // points per parameter, endpoints included; >= 2
  std::size_t refine_rounds = 3;
  std::optional<Rational> floor;  // overrides the family's truncation floor
  kernels::Mode mode = kernels::Mode::Parallel;
};

struct Separation {
  Hom hom;
  std::vector<Rational> point;  // parameter values
  Rational gap;                 // f(lower) - f(upper) > 0
};

/// Finds a verified f in the family with f(lower) > f(upper), i.e. a point
/// refuting lower <= upper. Deterministic; nullopt means nothing was found at
/// this resolution. Throws std::invalid_argument on an empty parameter box.
std::optional<Separation> separate(const Presentation& p, const HomFamily& fam, const Expr& lower,
                                   const Expr& upper, const SeparateOptions& opt = {});

/// Grid points of a box, lexicographic with the first parameter slowest.
std::vector<std::vector<Rational>> grid_points(const Box& box, std::size_t grid);

}  // namespace psr
