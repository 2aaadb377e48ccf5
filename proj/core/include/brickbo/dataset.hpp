#pragma once

// Combinatorial shape dataset: class labels, validation, parametric and
// curated generators, order augmentation and per-class statistics.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brickbo/lattice.hpp"

namespace brickbo {

enum class ShapeClass {
  kParallel,
  kPerpendicular,
  kBar,
  kLine,
  kPlate,
  kWall,
  kCuboid,
  kSquarePyramid,
  kBench,
  kSofa,
  kCup,
  kHollow,
  kTable,
  kCar,
};

inline constexpr std::array<ShapeClass, 14> kAllClasses{
    ShapeClass::kParallel, ShapeClass::kPerpendicular, ShapeClass::kBar,    ShapeClass::kLine,
    ShapeClass::kPlate,    ShapeClass::kWall,          ShapeClass::kCuboid, ShapeClass::kSquarePyramid,
    ShapeClass::kBench,    ShapeClass::kSofa,          ShapeClass::kCup,    ShapeClass::kHollow,
    ShapeClass::kTable,    ShapeClass::kCar,
};

std::string_view to_string(ShapeClass c);
std::optional<ShapeClass> parse_class(std::string_view s);
/// 'a', 'b' or 'c'.
char group_of(ShapeClass c);

struct ShapeInstance {
  ShapeClass label = ShapeClass::kBar;
  Combination bricks;
};

struct Violation {
  std::size_t index = 0;
  std::string reason;  ///< "invalid brick", "not grounded", "overlap" or "no contact"
};

/// Checks an assembly order. Brick 0 must sit on the ground; every later
/// brick must avoid all earlier ones and connect to at least one of them.
std::optional<Violation> validate_sequence(std::span<const Primitive> seq);

/// Orders an unordered, non-overlapping brick set into a valid assembly
/// sequence: start from the smallest ground brick, then repeatedly take the
/// smallest brick connecting to what is placed. Throws if disconnected.
Combination order_for_assembly(std::vector<Primitive> bricks);

/// All 46 two-brick connection types with the lower brick at the origin.
std::vector<ShapeInstance> generate_group_a();

/// Size parameters for the parametric classes, in studs and layers.
/// bar: length = bricks. line: length = bricks on the bottom row.
/// plate: length x width studs. wall: length studs x layers.
/// cuboid: length x width x layers. square_pyramid: base length, levels.
/// Group C classes scale with length x width x layers as documented in
/// generate_shape.
struct ShapeParams {
  int length = 8;
  int width = 8;
  int layers = 2;
  int levels = 2;
};

/// Builds one instance of any group B or C class.
/// Throws Error when the parameters cannot be tiled by 2x4 bricks, naming
/// the nearest feasible size.
ShapeInstance generate_shape(ShapeClass label, const ShapeParams& params);

/// Deterministic parameter sweep producing `per_class` instances of every
/// class in group 'b' or 'c'.
std::vector<ShapeInstance> generate_group(char group, int per_class);

/// Random valid reorderings of the instance's bricks.
std::vector<Combination> augment(const ShapeInstance& instance, std::uint64_t seed, std::size_t count);

struct ClassStats {
  ShapeClass label = ShapeClass::kBar;
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  ///< population
};

/// Per-class brick-count statistics, in class order; absent classes are skipped.
std::vector<ClassStats> stats(std::span<const ShapeInstance> collection);

}  // namespace brickbo
