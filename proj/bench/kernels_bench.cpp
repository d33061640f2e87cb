// Serial versus parallel kernels on the workloads that use them: the grid
// scan of separate() and the frontier expansion of prove().

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "psr/parser.hpp"
#include "psr/search.hpp"
#include "psr/separate.hpp"

namespace {

psr::Presentation load(const char* name) {
  std::ifstream in(std::string(PSR_INSTANCE_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return psr::parse_presentation(ss.str());
}

psr::kernels::Mode mode_of(const benchmark::State& st) {
  return st.range(0) ? psr::kernels::Mode::Parallel : psr::kernels::Mode::Serial;
}

void BM_separate(benchmark::State& st) {
  const auto p = load("inst_d.psr");
  psr::SeparateOptions o;
  o.grid = 33;
  o.mode = mode_of(st);
  // h <= g never separates on a fine grid, so the whole grid is scanned.
  const auto lo = p.expr("g"), hi = p.expr("g + h");
  for (auto _ : st) benchmark::DoNotOptimize(psr::separate(p, *p.family, lo, hi, o));
}

void BM_prove(benchmark::State& st) {
  const auto p = load("inst_c.psr");
  psr::Budget b;
  b.mode = mode_of(st);
  const auto lo = p.expr("y"), hi = p.expr("x");
  for (auto _ : st) benchmark::DoNotOptimize(psr::prove(p, lo, hi, b));
}

}  // namespace

BENCHMARK(BM_separate)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_prove)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
