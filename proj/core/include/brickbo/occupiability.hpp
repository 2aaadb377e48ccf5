#pragma once

#include <array>
#include <span>
#include <vector>

#include "brickbo/lattice.hpp"

namespace brickbo {

/// Desired voxel set on an m1 x m2 x m3 grid anchored at the origin.
class TargetShape {
 public:
  TargetShape(std::array<int, 3> extents, std::span<const Cell> cells);

  const std::array<int, 3>& extents() const { return extents_; }
  bool in_extents(const Cell& c) const;
  bool contains(const Cell& c) const;
  /// Cells in (k, j, i) order.
  std::vector<Cell> cells() const;
  std::size_t size() const { return count_; }
  Bounds bounds() const { return Bounds::from_extents(extents_[0], extents_[1], extents_[2]); }

  /// Every cell covered by the combination, with extents grown to fit.
  static TargetShape from_combination(std::span<const Primitive> bricks);

 private:
  std::size_t linear(const Cell& c) const;

  std::array<int, 3> extents_;
  std::vector<unsigned char> mask_;
  std::size_t count_ = 0;
};

/// Target plus the cells already filled by a combination.
class OccupiabilityGrid {
 public:
  OccupiabilityGrid(const TargetShape& target, std::span<const Primitive> bricks);

  /// 1 iff the cell is filled. Throws for cells outside the extents.
  int occupancy(const Cell& c) const;
  /// 1 iff the cell belongs to the target and is still empty.
  int occupiability(const Cell& c) const;

  /// Number of occupiable cells under the candidate's footprint, in [0, 8].
  /// Throws when the candidate leaves the extents.
  int score(const Primitive& candidate) const;

  /// Target cells currently filled.
  std::size_t covered() const;

  const TargetShape& target() const { return *target_; }

 private:
  const TargetShape* target_;
  CellSet occupied_;
};

/// Occupiability score of placing `candidate` next to `c`.
int occupiability_score(const Primitive& candidate, std::span<const Primitive> c,
                        const TargetShape& target);

// Explicit evaluation functions over whole combinations. All throw on an
// empty combination.

int height(std::span<const Primitive> c);
/// Extent of occupied cells along axis 1.
int width(std::span<const Primitive> c);
/// Extent of occupied cells along axis 2.
int depth(std::span<const Primitive> c);
/// Engaged stud cells summed over every connected pair.
int connected_studs(std::span<const Primitive> c);

}  // namespace brickbo
