#include "brickbo/occupiability.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>

#include "brickbo/error.hpp"

namespace brickbo {

TargetShape::TargetShape(std::array<int, 3> extents, std::span<const Cell> cells) : extents_(extents) {
  if (extents[0] <= 0 || extents[1] <= 0 || extents[2] <= 0)
    throw Error("target extents must be positive");
  mask_.assign(static_cast<std::size_t>(extents[0]) * extents[1] * extents[2], 0);
  for (const auto& c : cells) {
    if (!in_extents(c)) throw Error("target cell outside extents");
    auto& m = mask_[linear(c)];
    if (!m) ++count_;
    m = 1;
  }
  if (count_ == 0) throw Error("target shape is empty");
}

bool TargetShape::in_extents(const Cell& c) const {
  return c.i >= 0 && c.j >= 0 && c.k >= 0 && c.i < extents_[0] && c.j < extents_[1] && c.k < extents_[2];
}

std::size_t TargetShape::linear(const Cell& c) const {
  return static_cast<std::size_t>(c.i) +
         static_cast<std::size_t>(extents_[0]) * (static_cast<std::size_t>(c.j) +
                                                  static_cast<std::size_t>(extents_[1]) * c.k);
}

bool TargetShape::contains(const Cell& c) const { return in_extents(c) && mask_[linear(c)] != 0; }

std::vector<Cell> TargetShape::cells() const {
  std::vector<Cell> out;
  out.reserve(count_);
  for (int k = 0; k < extents_[2]; ++k)
    for (int j = 0; j < extents_[1]; ++j)
      for (int i = 0; i < extents_[0]; ++i)
        if (contains(Cell{i, j, k})) out.push_back(Cell{i, j, k});
  return out;
}

TargetShape TargetShape::from_combination(std::span<const Primitive> bricks) {
  if (bricks.empty()) throw Error("empty combination");
  std::vector<Cell> cells;
  std::array<int, 3> ext{1, 1, 1};
  for (const auto& b : bricks) {
    for (const auto& c : footprint(b)) {
      if (c.i < 0 || c.j < 0 || c.k < 0) throw Error("combination has cells at negative coordinates");
      ext = {std::max(ext[0], c.i + 1), std::max(ext[1], c.j + 1), std::max(ext[2], c.k + 1)};
      cells.push_back(c);
    }
  }
  return TargetShape(ext, cells);
}

OccupiabilityGrid::OccupiabilityGrid(const TargetShape& target, std::span<const Primitive> bricks)
    : target_(&target), occupied_(occupied_cells(bricks)) {}

int OccupiabilityGrid::occupancy(const Cell& c) const {
  if (!target_->in_extents(c)) throw Error("cell outside extents");
  return occupied_.contains(c) ? 1 : 0;
}

int OccupiabilityGrid::occupiability(const Cell& c) const {
  if (!target_->in_extents(c)) throw Error("cell outside extents");
  return (target_->contains(c) && !occupied_.contains(c)) ? 1 : 0;
}

int OccupiabilityGrid::score(const Primitive& candidate) const {
  int total = 0;
  for (const auto& c : footprint(candidate)) {
    if (!target_->in_extents(c)) throw Error("candidate outside extents");
    total += (target_->contains(c) && !occupied_.contains(c)) ? 1 : 0;
  }
  return total;
}

std::size_t OccupiabilityGrid::covered() const {
  std::size_t n = 0;
  for (const auto& c : occupied_)
    if (target_->contains(c)) ++n;
  return n;
}

int occupiability_score(const Primitive& candidate, std::span<const Primitive> c,
                        const TargetShape& target) {
  return OccupiabilityGrid(target, c).score(candidate);
}

int height(std::span<const Primitive> c) {
  if (c.empty()) throw Error("empty combination");
  int top = 0;
  for (const auto& b : c) top = std::max(top, b.z);
  return top + 1;
}

int width(std::span<const Primitive> c) {
  if (c.empty()) throw Error("empty combination");
  int lo = INT_MAX, hi = INT_MIN;
  for (const auto& b : c) {
    lo = std::min(lo, b.a1);
    hi = std::max(hi, b.a1 + b.length1());
  }
  return hi - lo;
}

int depth(std::span<const Primitive> c) {
  if (c.empty()) throw Error("empty combination");
  int lo = INT_MAX, hi = INT_MIN;
  for (const auto& b : c) {
    lo = std::min(lo, b.a2);
    hi = std::max(hi, b.a2 + b.length2());
  }
  return hi - lo;
}

int connected_studs(std::span<const Primitive> c) {
  if (c.empty()) throw Error("empty combination");
  int total = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (std::abs(c[i].z - c[j].z) == 1) total += plan_overlap_area(c[i], c[j]);
  return total;
}

}  // namespace brickbo
