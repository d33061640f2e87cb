#pragma once

// Property suites for the asymptotic rules, the R-extension, and the
// localization, run against one presentation with seeded sampling.

#include <cstdint>
#include <string>
#include <vector>

#include "psr/search.hpp"

namespace psr {

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 8;   // random cases per suite
  std::size_t swaps = 200;   // localization representative swaps
  Budget budget;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t checked = 0;  // cases constructed and verified
  std::string detail;       // first failure, why nothing was checked, or a note
};

/// Every suite needs at least one checked case to pass. Needs a
/// power_universal element; suites without one fail with that reason.
std::vector<SuiteResult> run_suites(const Presentation& p, const SuiteOptions& opt = {});

std::string print_suites(const std::vector<SuiteResult>& results);

}  // namespace psr
