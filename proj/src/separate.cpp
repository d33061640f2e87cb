#include "psr/separate.hpp"

#include <stdexcept>

namespace psr {

std::vector<std::vector<Rational>> grid_points(const Box& box, std::size_t grid) {
  if (grid < 2) throw std::invalid_argument("grid resolution must be at least 2");
  const std::size_t d = box.lo.size();
  std::vector<std::vector<Rational>> axes(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Rational step = (box.hi[i] - box.lo[i]) / Rational(static_cast<long>(grid - 1));
    for (std::size_t j = 0; j < grid; ++j) {
      Rational v = box.lo[i] + step * Rational(static_cast<long>(j));
      if (axes[i].empty() || axes[i].back() != v) axes[i].push_back(v);
    }
  }
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> cur(d);
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) cur[i] = axes[i][idx[i]];
    out.push_back(cur);
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (d == 0) return out;
  }
}

namespace {

std::optional<Rational> gap_at(const Presentation& p, const HomFamily& fam, const Expr& lower,
                               const Expr& upper, const std::vector<Rational>& point) {
  if (!fam.satisfies_constraints(point)) return std::nullopt;
  Hom f;
  try {
    f.values = fam.valuation_at(point);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  if (!verify_hom(p, f)) return std::nullopt;
  return eval(f, lower) - eval(f, upper);
}

}  // namespace

std::optional<Separation> separate(const Presentation& p, const HomFamily& fam, const Expr& lower,
                                   const Expr& upper, const SeparateOptions& opt) {
  Box box = fam.truncated_box(opt.floor.value_or(fam.floor));
  for (std::size_t i = 0; i < box.lo.size(); ++i)
    if (box.lo[i] > box.hi[i]) throw std::invalid_argument("empty parameter box");

  std::optional<std::vector<Rational>> best_point;
  Rational best_gap;
  for (std::size_t round = 0; round <= opt.refine_rounds; ++round) {
    auto points = grid_points(box, opt.grid);
    auto scores = kernels::scan(opt.mode, points.size(),
                                [&](std::size_t i) { return gap_at(p, fam, lower, upper, points[i]); });
    auto best = kernels::reduce_scores(scores);
    if (best && (!best_point || best->score > best_gap)) {
      best_point = points[best->index];
      best_gap = best->score;
    }
    if (best_point && best_gap > 0) {
      Hom f{fam.valuation_at(*best_point)};
      if (!verify_hom(p, f)) throw std::logic_error("separator failed re-verification");
      return Separation{std::move(f), *best_point, best_gap};
    }
    if (!best_point) return std::nullopt;
    // Shrink to one grid cell on either side of the best point so far.
    Box next = box;
    for (std::size_t i = 0; i < box.lo.size(); ++i) {
      const Rational cell = (box.hi[i] - box.lo[i]) / Rational(static_cast<long>(opt.grid - 1));
      Rational lo = (*best_point)[i] - cell, hi = (*best_point)[i] + cell;
      next.lo[i] = lo < box.lo[i] ? box.lo[i] : lo;
      next.hi[i] = hi > box.hi[i] ? box.hi[i] : hi;
    }
    box = next;
  }
  return std::nullopt;
}

}  // namespace psr
