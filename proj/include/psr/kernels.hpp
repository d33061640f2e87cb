#pragma once

// Data-parallel kernels with serial reference versions. Both variants write
// per-item results into index-addressed slots and reduce in index order, so
// their outputs are identical regardless of scheduling.

#include <cstddef>
#include <optional>
#include <vector>

#include "psr/expr.hpp"

namespace psr::kernels {

/// Best item of a scored scan: largest score, ties to the smallest index.
struct ScanBest {
  std::size_t index = 0;
  Rational score;
};

inline std::optional<ScanBest> reduce_scores(const std::vector<std::optional<Rational>>& scores) {
  std::optional<ScanBest> best;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!scores[i]) continue;
    if (!best || *scores[i] > best->score) best = ScanBest{i, *scores[i]};
  }
  return best;
}

/// score(i) -> optional<Rational>; nullopt marks an infeasible item.
template <typename Score>
std::vector<std::optional<Rational>> scan_serial(std::size_t n, Score&& score) {
  std::vector<std::optional<Rational>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = score(i);
  return out;
}

template <typename Score>
std::vector<std::optional<Rational>> scan_parallel(std::size_t n, Score&& score) {
  std::vector<std::optional<Rational>> out(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = score(static_cast<std::size_t>(i));
  return out;
}

/// expand(i) -> std::vector<T>; results are concatenated in index order.
template <typename T, typename Expand>
std::vector<std::vector<T>> expand_serial(std::size_t n, Expand&& expand) {
  std::vector<std::vector<T>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = expand(i);
  return out;
}

template <typename T, typename Expand>
std::vector<std::vector<T>> expand_parallel(std::size_t n, Expand&& expand) {
  std::vector<std::vector<T>> out(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = expand(static_cast<std::size_t>(i));
  return out;
}

enum class Mode { Serial, Parallel };

template <typename Score>
std::vector<std::optional<Rational>> scan(Mode m, std::size_t n, Score&& score) {
  return m == Mode::Parallel ? scan_parallel(n, score) : scan_serial(n, score);
}

template <typename T, typename Expand>
std::vector<std::vector<T>> expand(Mode m, std::size_t n, Expand&& e) {
  return m == Mode::Parallel ? expand_parallel<T>(n, e) : expand_serial<T>(n, e);
}

}  // namespace psr::kernels
