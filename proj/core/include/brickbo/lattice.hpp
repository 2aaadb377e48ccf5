#pragma once

// Discrete geometry of 2x4 bricks on the stud lattice.
//
// A brick is stored by the minimum corner of its footprint (anchor) rather
// than by its center, so all geometry stays in integer arithmetic. The center
// convention maps as center_axis = anchor_axis + length_axis / 2 on the two
// plan axes; the layer index is shared.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "brickbo/rng.hpp"

namespace brickbo {

/// One lattice cell: (axis-1, axis-2, layer), each one stud / one layer wide.
struct Cell {
  int i = 0;
  int j = 0;
  int k = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(c.i);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(c.j);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(c.k);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

using CellSet = std::unordered_set<Cell, CellHash>;

enum class Direction : int { kLengthwise = 0, kBreadthwise = 1 };

/// A placed brick. d = 0 spans 4 studs along axis 1 and 2 along axis 2;
/// d = 1 is the same brick turned by a right angle.
struct Primitive {
  int a1 = 0;
  int a2 = 0;
  int z = 0;
  int d = 0;

  int length1() const { return d == 0 ? 4 : 2; }
  int length2() const { return d == 0 ? 2 : 4; }

  /// Plan-view center in stud units.
  double center1() const { return a1 + length1() / 2.0; }
  double center2() const { return a2 + length2() / 2.0; }

  /// Inverse of center1/center2: builds a brick from its center.
  static Primitive from_center(double c1, double c2, int z, int d);

  bool valid() const { return z >= 0 && (d == 0 || d == 1); }

  friend bool operator==(const Primitive&, const Primitive&) = default;
  /// Enumeration order: (z, a1, a2, d).
  friend std::strong_ordering operator<=>(const Primitive& p, const Primitive& q) {
    if (auto c = p.z <=> q.z; c != 0) return c;
    if (auto c = p.a1 <=> q.a1; c != 0) return c;
    if (auto c = p.a2 <=> q.a2; c != 0) return c;
    return p.d <=> q.d;
  }
};

struct PrimitiveHash {
  std::size_t operator()(const Primitive& p) const noexcept {
    return CellHash{}(Cell{p.a1, p.a2, p.z * 2 + p.d});
  }
};

using PrimitiveSet = std::unordered_set<Primitive, PrimitiveHash>;

/// Ordered assembly sequence of bricks.
using Combination = std::vector<Primitive>;

/// Axis-aligned placement region, half-open on every axis. Layers are
/// additionally clipped to z >= 0 by every query.
struct Bounds {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};

  static Bounds from_extents(int m1, int m2, int m3) { return Bounds{{0, 0, 0}, {m1, m2, m3}}; }
  /// Effectively unbounded region, large enough for any desk-scale run.
  static Bounds unbounded() { return Bounds{{-(1 << 20), -(1 << 20), 0}, {1 << 20, 1 << 20, 1 << 20}}; }

  bool contains(const Cell& c) const {
    return c.i >= lo[0] && c.i < hi[0] && c.j >= lo[1] && c.j < hi[1] && c.k >= lo[2] && c.k < hi[2];
  }
  bool contains(const Primitive& p) const;
  bool positive() const { return hi[0] > lo[0] && hi[1] > lo[1] && hi[2] > lo[2]; }
};

/// The 8 cells covered by a brick.
std::array<Cell, 8> footprint(const Primitive& p);

/// Number of plan-view cells shared by two footprints, ignoring layers.
int plan_overlap_area(const Primitive& p, const Primitive& q);

/// True when the bricks sit on adjacent layers and share at least one stud.
bool connects(const Primitive& p, const Primitive& q);

/// True when the bricks share at least one cell.
bool overlaps(const Primitive& p, const Primitive& q);

/// Union of all footprints of a combination.
CellSet occupied_cells(std::span<const Primitive> bricks);

/// Every brick inside `bounds` (z >= 0) that overlaps nothing in `c` and
/// connects to at least one brick of `c`, sorted by (z, a1, a2, d).
/// Throws Error("no structure to attach to") for an empty combination.
std::vector<Primitive> enumerate_attachments(std::span<const Primitive> c, const Bounds& bounds);

/// Uniform sample without replacement of min(count, |feasible|) attachments.
std::vector<Primitive> sample_attachments(std::span<const Primitive> c, const Bounds& bounds,
                                          std::size_t count, std::uint64_t seed);

/// Same as above, drawing from a caller-owned generator.
std::vector<Primitive> sample_from(std::span<const Primitive> feasible, std::size_t count, Rng& rng);

/// Number of connected components of the connection graph.
int connected_components(std::span<const Primitive> bricks);

/// Whole-combination check: valid bricks, no overlap, every brick after the
/// first connects to an earlier one. Returns the first violating index.
std::optional<std::size_t> first_violation(std::span<const Primitive> bricks);

}  // namespace brickbo
