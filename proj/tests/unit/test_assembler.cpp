#include <doctest.h>

#include <algorithm>
#include <map>

#include "brickbo/assembler.hpp"
#include "brickbo/error.hpp"

using namespace brickbo;

namespace {

BoConfig quick_bo(std::uint64_t seed) {
  BoConfig cfg;
  cfg.initial = 3;
  cfg.candidates = 6;
  cfg.acquisition_samples = 200;
  cfg.gp_restarts = 2;
  cfg.seed = seed;
  return cfg;
}

TargetShape box_target(int m1, int m2, int m3) {
  std::vector<Cell> cells;
  for (int k = 0; k < m3; ++k)
    for (int j = 0; j < m2; ++j)
      for (int i = 0; i < m1; ++i) cells.push_back({i, j, k});
  return TargetShape({m1, m2, m3}, cells);
}

// Target holding only the seed brick, so every placement scores 0.
TargetShape adversarial_target() {
  std::vector<Cell> cells;
  for (const auto& c : footprint({4, 4, 0, 0})) cells.push_back(c);
  return TargetShape({12, 12, 4}, cells);
}

// Best objective value over every sequence of `steps` attachments.
int exhaustive_best(Objective objective, Combination& c, int steps) {
  int best = evaluate_objective(objective, c);
  if (steps == 0) return best;
  for (const auto& p : enumerate_attachments(c, Bounds::unbounded())) {
    c.push_back(p);
    best = std::max(best, exhaustive_best(objective, c, steps - 1));
    c.pop_back();
  }
  return best;
}

}  // namespace

TEST_CASE("assembly without rollback places exactly T bricks") {
  AssemblyConfig cfg;
  cfg.steps = 5;
  cfg.rollback_threshold = 0.0;
  cfg.initial = {{2, 2, 0, 0}};
  const auto trace = assemble(box_target(8, 6, 3), cfg, quick_bo(1), StabilityConfig{});
  CHECK(trace.status == AssemblyStatus::kComplete);
  CHECK(trace.steps.size() == 5);
  CHECK(trace.rollbacks() == 0);
  CHECK(trace.final.size() == 6);
  CHECK_FALSE(first_violation(trace.final).has_value());
  CHECK(replay(trace) == trace.final);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    CHECK(trace.steps[i].t == static_cast<int>(i) + 1);
    CHECK(trace.steps[i].brick == best_observation(trace.steps[i].observations).primitive);
  }
}

TEST_CASE("a single step run") {
  AssemblyConfig cfg;
  cfg.steps = 1;
  cfg.rollback_window = 1;
  cfg.rollback_threshold = 100;
  const auto trace = assemble(box_target(8, 8, 2), cfg, quick_bo(2), StabilityConfig{});
  CHECK(trace.final.size() == 2);
  CHECK(trace.rollbacks() == 0);
}

TEST_CASE("assembly is reproducible for a fixed seed") {
  AssemblyConfig cfg;
  cfg.steps = 4;
  const auto target = box_target(8, 8, 3);
  const auto a = assemble(target, cfg, quick_bo(7), StabilityConfig{});
  const auto b = assemble(target, cfg, quick_bo(7), StabilityConfig{});
  CHECK(a.final == b.final);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) CHECK(a.steps[i].observations == b.steps[i].observations);
}

TEST_CASE("rollback on an adversarial target terminates and never repeats an exclusion") {
  for (auto mode : {RollbackMode::kShortfall, RollbackMode::kLiteral}) {
    AssemblyConfig cfg;
    cfg.steps = 3;
    cfg.rollback_window = 2;
    cfg.rollback_threshold = 1.0;
    cfg.rollback_mode = mode;
    cfg.initial = {{4, 4, 0, 0}};
    const auto trace = assemble(adversarial_target(), cfg, quick_bo(3), StabilityConfig{});
    CHECK(trace.rollbacks() > 0);
    CHECK(static_cast<int>(trace.steps.size()) <= cfg.steps + 5 * cfg.rollback_window * cfg.steps);
    CHECK(replay(trace) == trace.final);
    if (trace.status == AssemblyStatus::kComplete) CHECK(trace.final.size() == 4);

    std::map<int, PrimitiveSet> removed_at;
    for (const auto& s : trace.steps) {
      CHECK_FALSE(removed_at[s.t].contains(s.brick));
      CHECK(s.y_o == 0.0);
      if (s.rollback) {
        CHECK(s.removed.size() == 2);
        for (std::size_t k = 0; k < s.removed.size(); ++k) removed_at[s.t - static_cast<int>(k)].insert(s.removed[k]);
      }
    }
    CHECK(std::any_of(trace.steps.begin(), trace.steps.end(), [](const StepRecord& s) { return s.rollback_skipped; }));
  }
}

TEST_CASE("alpha = 0 disables rollback in both modes") {
  for (auto mode : {RollbackMode::kShortfall, RollbackMode::kLiteral}) {
    AssemblyConfig cfg;
    cfg.steps = 4;
    cfg.rollback_threshold = 0.0;
    cfg.rollback_mode = mode;
    cfg.initial = {{4, 4, 0, 0}};
    const auto trace = assemble(adversarial_target(), cfg, quick_bo(5), StabilityConfig{});
    CHECK(trace.rollbacks() == 0);
    CHECK(trace.steps.size() == 4);
  }
}

TEST_CASE("saturation ends the run early") {
  AssemblyConfig cfg;
  cfg.steps = 50;
  const auto trace = assemble(box_target(4, 2, 2), cfg, quick_bo(1), StabilityConfig{});
  CHECK(trace.status == AssemblyStatus::kSaturated);
  CHECK(trace.steps.size() < 50);
  CHECK(replay(trace) == trace.final);
}

TEST_CASE("assembly config validation") {
  AssemblyConfig cfg;
  cfg.steps = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.rollback_threshold = -1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.initial = {{0, 0, 0, 0}, {9, 9, 1, 0}};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.initial.clear();
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("replay rejects a tampered trace") {
  AssemblyTrace trace;
  StepRecord s;
  s.t = 1;
  s.brick = {0, 0, 1, 0};
  s.rollback = true;
  s.removed = {{4, 0, 1, 0}};
  trace.steps.push_back(s);
  CHECK_THROWS_AS(replay(trace), Error);
}

TEST_CASE("combination counts") {
  const auto two = count_combinations(2);
  CHECK(two.total == 46);
  CHECK(two.parallel == 21);
  CHECK(two.perpendicular == 25);
  CHECK(count_combinations(3).total == 3556);
  CHECK(count_combinations(2, CountConvention::kTranslation).total == 92);
  CHECK(count_combinations(3, CountConvention::kTranslation).total == 6152);
  CHECK(count_combinations(2, CountConvention::kRotation).total == 24);
  CHECK(count_combinations(3, CountConvention::kRotation).total == 1560);
  CHECK_THROWS_AS(count_combinations(4), Error);
  CHECK(parse_convention("translation") == CountConvention::kTranslation);
  CHECK_FALSE(parse_convention("nope").has_value());
}

TEST_CASE("oracle curves reach the analytic optimum") {
  const std::vector<std::uint64_t> seeds{0};
  for (int steps = 1; steps <= 4; ++steps) {
    const auto h = assemble_explicit(Objective::kHeight, Method::kOracle, steps, seeds);
    const auto w = assemble_explicit(Objective::kWidth, Method::kOracle, steps, seeds);
    const auto d = assemble_explicit(Objective::kDepth, Method::kOracle, steps, seeds);
    REQUIRE(h.size() == 1);
    CHECK(h[0].values.back() == steps + 1);
    CHECK(w[0].values.back() == 4 + 3 * steps);
    CHECK(d[0].values.back() == 2 + 3 * steps);
  }
}

TEST_CASE("oracle matches exhaustive search for short horizons") {
  const std::vector<std::uint64_t> seeds{0};
  for (auto obj : {Objective::kHeight, Objective::kWidth, Objective::kDepth, Objective::kStuds}) {
    for (int steps = 1; steps <= 2; ++steps) {
      Combination c{{0, 0, 0, 0}};
      const int best = exhaustive_best(obj, c, steps);
      const double got = assemble_explicit(obj, Method::kOracle, steps, seeds)[0].values.back();
      CHECK(got == best);
    }
  }
}

TEST_CASE("explicit curves are monotone, bounded by the oracle and reproducible") {
  const std::vector<std::uint64_t> seeds{1, 2};
  BoConfig bo = quick_bo(0);
  for (auto obj : {Objective::kHeight, Objective::kWidth}) {
    const auto oracle = assemble_explicit(obj, Method::kOracle, 4, seeds, bo);
    for (auto method : {Method::kRandom, Method::kGreedy, Method::kBo}) {
      const auto curves = assemble_explicit(obj, method, 4, seeds, bo);
      REQUIRE(curves.size() == 2);
      for (const auto& c : curves) {
        CHECK(c.values.size() == 4);
        CHECK(std::is_sorted(c.values.begin(), c.values.end()));
        for (std::size_t i = 0; i < 4; ++i) CHECK(c.values[i] <= oracle[0].values[i]);
        CHECK(c.final.size() == 5);
      }
      CHECK(assemble_explicit(obj, method, 4, seeds, bo)[1].values == curves[1].values);
    }
  }
  CHECK_THROWS_AS(assemble_explicit(Objective::kHeight, Method::kRandom, 0, seeds), Error);
}

TEST_CASE("names round-trip") {
  for (auto o : {Objective::kHeight, Objective::kWidth, Objective::kDepth, Objective::kStuds})
    CHECK(parse_objective(to_string(o)) == o);
  for (auto m : {Method::kBo, Method::kRandom, Method::kGreedy, Method::kOracle}) CHECK(parse_method(to_string(m)) == m);
  CHECK_FALSE(parse_objective("volume").has_value());
}

TEST_CASE("T = 1 fills a target one slot larger than the seed") {
  AssemblyConfig cfg;
  cfg.steps = 1;
  const auto target = box_target(4, 2, 2);
  const auto trace = assemble(target, cfg, quick_bo(4), StabilityConfig{});
  CHECK(trace.status == AssemblyStatus::kComplete);
  CHECK(OccupiabilityGrid(target, trace.final).covered() == target.size());
}
