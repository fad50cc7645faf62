#include <benchmark/benchmark.h>

#include <vector>

#include "fairscope/audit.hpp"
#include "fairscope/classification.hpp"
#include "fairscope/config.hpp"
#include "fairscope/rank_stats.hpp"
#include "fairscope/rng.hpp"

namespace {

std::vector<double> normals(std::uint64_t seed, std::size_t n) {
  fairscope::CounterRng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

void BM_Spearman(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = normals(1, n);
  const auto y = normals(2, n);
  for (auto _ : state) benchmark::DoNotOptimize(fairscope::spearman(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Spearman)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_Auc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = normals(3, n);
  std::vector<bool> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i % 3 == 0;
  for (auto _ : state) benchmark::DoNotOptimize(fairscope::auc(s, labels));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Auc)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_FullAudit(benchmark::State& state) {
  fairscope::AuditConfig cfg;
  cfg.input = FAIRSCOPE_FIXTURE_DIR "/null.csv";
  cfg.strata_column = "f_stratum";
  const auto table = fairscope::load_input(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(fairscope::run_audit(table, cfg));
}
BENCHMARK(BM_FullAudit)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
