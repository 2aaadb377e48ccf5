#include <doctest.h>

#include "brickbo/error.hpp"
#include "brickbo/io.hpp"

using namespace brickbo;

TEST_CASE("target round-trip") {
  const TargetShape t({4, 3, 2}, std::vector<Cell>{{0, 0, 0}, {3, 2, 1}, {1, 1, 0}});
  const TargetShape back = target_from_json(target_to_json(t));
  CHECK(back.extents() == t.extents());
  CHECK(back.cells() == t.cells());
  CHECK_THROWS_AS(target_from_json("{\"extents\": [2, 2, 2], \"cells\": [[5, 0, 0]]}"), Error);
  CHECK_THROWS_AS(target_from_json("{\"extents\": [2, 2]}"), Error);
  CHECK_THROWS_AS(target_from_json("not json"), Error);
}

TEST_CASE("combination documents in several shapes") {
  const Combination c{{0, 0, 0, 0}, {2, 0, 1, 1}};
  CHECK(combination_from_json(combination_to_json(c)) == c);
  CHECK(combination_from_json("[[0, 0, 0, 0], [2, 0, 1, 1]]") == c);
  CHECK(combination_from_json("{\"final\": [[0, 0, 0, 0], [2, 0, 1, 1]]}") == c);
  // Centers: (2, 1) for the 4x2 origin brick, (3, 2) for the 2x4 one.
  CHECK(combination_from_json("{\"centers\": [[2, 1, 0, 0], [3, 2, 1, 1]]}") == c);
  CHECK_THROWS_AS(combination_from_json("{\"other\": 1}"), Error);
  CHECK_THROWS_AS(combination_from_json("[[0, 0, 0]]"), Error);
  CHECK_THROWS_AS(combination_from_json("[[0, 0, 0, 5]]"), Error);
}

TEST_CASE("dataset lines") {
  const ShapeInstance inst{ShapeClass::kWall, {{0, 0, 0, 0}, {2, 0, 1, 0}}};
  const std::string line = instance_to_json_line(inst);
  CHECK(line.find('\n') == std::string::npos);
  const auto back = instance_from_json_line(line);
  CHECK(back.label == inst.label);
  CHECK(back.bricks == inst.bricks);
  CHECK(instance_from_json_line("{\"class\": \"bar\", \"centers\": [[2, 1, 0, 0]]}").bricks ==
        Combination{{0, 0, 0, 0}});
  CHECK_THROWS_AS(instance_from_json_line("{\"class\": \"boat\", \"bricks\": []}"), Error);
  CHECK_THROWS_AS(instance_from_json_line("{\"bricks\": []}"), Error);
}

TEST_CASE("trace round-trip rebuilds rollbacks") {
  AssemblyTrace trace;
  trace.config.steps = 2;
  trace.config.rollback_window = 1;
  trace.config.rollback_threshold = 4;
  trace.config.rollback_mode = RollbackMode::kLiteral;
  StepRecord s1;
  s1.t = 1;
  s1.brick = {0, 0, 1, 0};
  s1.y_o = 8;
  s1.y_s = -0.25;
  s1.observations = {{{0, 0, 1, 0}, 8, -0.25}, {{1, 0, 1, 1}, 3, -1.0 / 3}};
  StepRecord s2 = s1;
  s2.t = 1;
  s2.brick = {2, 0, 1, 0};
  s2.rollback = true;
  s2.removed = {{2, 0, 1, 0}};
  trace.steps = {s1, s2};
  trace.final = {{0, 0, 0, 0}, {0, 0, 1, 0}};
  const std::string text = trace_to_json(trace, BoConfig{}, StabilityConfig{});
  const auto back = trace_from_json(text);
  CHECK(back.config.rollback_mode == RollbackMode::kLiteral);
  CHECK(back.config.rollback_threshold == 4);
  REQUIRE(back.steps.size() == 2);
  CHECK(back.steps[0].observations == s1.observations);
  CHECK(back.steps[1].removed == s2.removed);
  CHECK(back.final == trace.final);
  CHECK(replay(back) == back.final);
  CHECK(trace_to_json(back, BoConfig{}, StabilityConfig{}) == text);
  CHECK_THROWS_AS(trace_from_json("{\"steps\": []}"), Error);
}

TEST_CASE("curve and summary CSV") {
  const std::vector<Curve> curves{{Method::kRandom, Objective::kHeight, 1, {1, 2}, {}},
                                  {Method::kRandom, Objective::kHeight, 2, {3, 4}, {}}};
  CHECK(curves_to_csv(curves) ==
        "method,objective,seed,step,value\n"
        "random,height,1,1,1\nrandom,height,1,2,2\nrandom,height,2,1,3\nrandom,height,2,2,4\n");
  // Values {1, 3}: mean 2, population std 1.
  const std::string summary = summary_to_csv(curves);
  CHECK(summary.rfind("method,objective,step,n,mean,halfwidth\nrandom,height,1,2,2,1.96\n", 0) == 0);
}

TEST_CASE("stats CSV uses one decimal") {
  const std::vector<ClassStats> rows{{ShapeClass::kBar, 3, 4.0, 0.81649658}};
  CHECK(stats_to_csv(rows) == "class,count,mean,std\nbar,3,4.0,0.8\n");
}
