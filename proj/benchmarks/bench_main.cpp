#include <benchmark/benchmark.h>

#include "brickbo/assembler.hpp"
#include "brickbo/bo.hpp"
#include "brickbo/dataset.hpp"
#include "brickbo/gp.hpp"
#include "brickbo/occupiability.hpp"
#include "brickbo/rng.hpp"
#include "brickbo/stability.hpp"

using namespace brickbo;

namespace {

// A connected random combination grown from the origin.
Combination grow(int n, std::uint64_t seed) {
  Rng rng(seed);
  Combination c{{0, 0, 0, 0}};
  while (static_cast<int>(c.size()) < n) {
    const auto opts = enumerate_attachments(c, Bounds::unbounded());
    c.push_back(opts[rng.index(opts.size())]);
  }
  return c;
}

TargetShape box(int m1, int m2, int m3) {
  std::vector<Cell> cells;
  for (int k = 0; k < m3; ++k)
    for (int j = 0; j < m2; ++j)
      for (int i = 0; i < m1; ++i) cells.push_back({i, j, k});
  return TargetShape({m1, m2, m3}, cells);
}

}  // namespace

static void BM_EnumerateAttachments(benchmark::State& state) {
  const auto c = grow(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_attachments(c, Bounds::unbounded()));
}
BENCHMARK(BM_EnumerateAttachments)->Arg(1)->Arg(10)->Arg(40);

static void BM_OccupiabilityScore(benchmark::State& state) {
  const auto target = box(16, 16, 4);
  const auto c = generate_shape(ShapeClass::kCuboid, {8, 8, 2, 1}).bricks;
  const auto cands = enumerate_attachments(c, target.bounds());
  for (auto _ : state)
    for (const auto& p : cands) benchmark::DoNotOptimize(occupiability_score(p, c, target));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cands.size()));
}
BENCHMARK(BM_OccupiabilityScore);

static void BM_StabilityPenalty(benchmark::State& state) {
  const auto c = grow(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(stability_penalty(c));
}
BENCHMARK(BM_StabilityPenalty)->Arg(5)->Arg(30);

static void BM_GpFit(benchmark::State& state) {
  const auto c = grow(static_cast<int>(state.range(0)) + 1, 3);
  const Combination xs(c.begin() + 1, c.end());
  Rng rng(4);
  Eigen::VectorXd y(static_cast<Eigen::Index>(xs.size()));
  for (auto& v : y) v = std::round(rng.uniform(0, 8));
  const Eigen::MatrixXd x = encode_all(xs);
  for (auto _ : state) benchmark::DoNotOptimize(GpModel::fit(x, y));
}
BENCHMARK(BM_GpFit)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_GpPredict(benchmark::State& state) {
  const auto c = grow(21, 5);
  const Combination xs(c.begin() + 1, c.end());
  Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(xs.size()), 0, 8);
  const GpModel model = GpModel::fit(encode_all(xs), y);
  const auto queries = enumerate_attachments(c, Bounds::unbounded());
  for (auto _ : state)
    for (const auto& p : queries) benchmark::DoNotOptimize(model.posterior(p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(queries.size()));
}
BENCHMARK(BM_GpPredict);

static void BM_SelectNext(benchmark::State& state) {
  const auto target = box(12, 12, 4);
  const Combination c{{4, 4, 0, 0}};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    BoConfig cfg;
    cfg.seed = seed;
    Rng rng(seed++);
    benchmark::DoNotOptimize(select_next(c, cfg, target, StabilityConfig{}, rng));
  }
}
BENCHMARK(BM_SelectNext)->Unit(benchmark::kMillisecond);

static void BM_AssembleStep(benchmark::State& state) {
  const auto target = box(8, 8, 2);
  AssemblyConfig cfg;
  cfg.steps = 5;
  cfg.rollback_threshold = 0;
  cfg.initial = {{0, 0, 0, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(assemble(target, cfg, BoConfig{}, StabilityConfig{}));
}
BENCHMARK(BM_AssembleStep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
