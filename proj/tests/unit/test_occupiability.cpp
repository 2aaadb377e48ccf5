#include <doctest.h>

#include <algorithm>

#include "brickbo/error.hpp"
#include "brickbo/occupiability.hpp"
#include "brickbo/rng.hpp"
#include "oracles.hpp"

using namespace brickbo;

namespace {

TargetShape slab_target() {
  std::vector<Cell> cells;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) cells.push_back({i, j, 0});
  return TargetShape({8, 8, 2}, cells);
}

}  // namespace

TEST_CASE("occupancy and occupiability of single cells") {
  const auto target = slab_target();
  const OccupiabilityGrid empty(target, Combination{});
  CHECK(empty.occupancy({0, 0, 0}) == 0);
  CHECK(empty.occupiability({0, 0, 0}) == 1);
  CHECK(empty.occupiability({5, 5, 0}) == 0);

  const OccupiabilityGrid one(target, Combination{{0, 0, 0, 0}});
  CHECK(one.occupancy({0, 0, 0}) == 1);
  CHECK(one.occupancy({0, 0, 1}) == 0);
  CHECK(one.occupiability({0, 0, 0}) == 0);
  CHECK_THROWS_AS(one.occupancy({8, 0, 0}), Error);
  CHECK_THROWS_AS(one.occupiability({0, 0, -1}), Error);
}

TEST_CASE("occupiability score on a slab target") {
  const auto target = slab_target();
  CHECK(occupiability_score({0, 0, 0, 0}, Combination{}, target) == 8);
  CHECK(occupiability_score({2, 0, 0, 0}, Combination{}, target) == 4);
  CHECK(occupiability_score({4, 4, 0, 0}, Combination{}, target) == 0);
  CHECK(occupiability_score({0, 0, 1, 0}, Combination{{0, 0, 0, 0}}, target) == 0);
  CHECK_THROWS_AS(occupiability_score({6, 0, 0, 0}, Combination{}, target), Error);
}

TEST_CASE("occupiability score matches the per-cell brute force") {
  Rng rng(3);
  std::vector<Cell> cells;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 4; ++k)
        if (rng.uniform01() < 0.6) cells.push_back({i, j, k});
  const TargetShape target({12, 12, 5}, cells);
  const Bounds bounds = target.bounds();
  for (int trial = 0; trial < 200; ++trial) {
    Combination scene{{static_cast<int>(rng.index(8)), static_cast<int>(rng.index(8)), 0, static_cast<int>(rng.index(2))}};
    const int n = static_cast<int>(rng.index(8));
    for (int k = 0; k < n; ++k) {
      const auto opts = enumerate_attachments(scene, bounds);
      if (opts.empty()) break;
      scene.push_back(opts[rng.index(opts.size())]);
    }
    const auto candidates = enumerate_attachments(scene, bounds);
    for (const auto& cand : candidates) {
      const int score = occupiability_score(cand, scene, target);
      CHECK(score == oracle::occupiability_sum(cand, scene, target));
      CHECK(score >= 0);
      CHECK(score <= 8);
    }
  }
}

TEST_CASE("adding a brick never raises occupiability") {
  Rng rng(9);
  std::vector<Cell> cells;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 3; ++k) cells.push_back({i, j, k});
  const TargetShape target({8, 8, 3}, cells);
  Combination c{{0, 0, 0, 0}};
  for (int step = 0; step < 8; ++step) {
    const auto opts = enumerate_attachments(c, target.bounds());
    if (opts.empty()) break;
    const OccupiabilityGrid before(target, c);
    c.push_back(opts[rng.index(opts.size())]);
    const OccupiabilityGrid after(target, c);
    for (const auto& cell : target.cells()) CHECK(after.occupiability(cell) <= before.occupiability(cell));
  }
}

TEST_CASE("explicit functions on small combinations") {
  const Combination one{{0, 0, 0, 0}};
  CHECK(height(one) == 1);
  CHECK(width(one) == 4);
  CHECK(depth(one) == 2);
  CHECK(connected_studs(one) == 0);

  const Combination stack{{0, 0, 0, 0}, {0, 0, 1, 0}};
  CHECK(height(stack) == 2);
  CHECK(connected_studs(stack) == 8);

  const Combination offset{{0, 0, 0, 0}, {3, 0, 1, 0}};
  CHECK(width(offset) == 7);
  CHECK(connected_studs(offset) == 2);

  // A brick wedged between two layers counts both interfaces.
  const Combination sandwich{{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 2, 0}};
  CHECK(connected_studs(sandwich) == 16);

  CHECK_THROWS_AS(height(Combination{}), Error);
  CHECK_THROWS_AS(connected_studs(Combination{}), Error);
}

TEST_CASE("explicit functions ignore assembly order") {
  Rng rng(21);
  Combination c{{0, 0, 0, 0}};
  for (int k = 0; k < 7; ++k) {
    const auto opts = enumerate_attachments(c, Bounds::unbounded());
    c.push_back(opts[rng.index(opts.size())]);
  }
  Combination shuffled = c;
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(height(c) == height(shuffled));
  CHECK(width(c) == width(shuffled));
  CHECK(depth(c) == depth(shuffled));
  CHECK(connected_studs(c) == connected_studs(shuffled));
}

TEST_CASE("target shape validation and voxelization of a combination") {
  CHECK_THROWS_AS(TargetShape({0, 1, 1}, std::vector<Cell>{}), Error);
  CHECK_THROWS_AS(TargetShape({2, 2, 2}, std::vector<Cell>{}), Error);
  CHECK_THROWS_AS(TargetShape({2, 2, 2}, std::vector<Cell>{{2, 0, 0}}), Error);
  const auto t = TargetShape::from_combination(Combination{{0, 0, 0, 0}, {2, 0, 1, 1}});
  CHECK(t.size() == 16);
  CHECK(t.extents() == std::array<int, 3>{4, 4, 2});
  CHECK(t.contains({3, 1, 0}));
  CHECK(t.contains({2, 3, 1}));
  CHECK_FALSE(t.contains({0, 3, 1}));
}
