#include "brickbo/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "brickbo/error.hpp"
#include "brickbo/rng.hpp"

namespace brickbo {

namespace {

constexpr std::array<std::string_view, 14> kClassNames{
    "parallel", "perpendicular", "bar",   "line",   "plate", "wall",  "cuboid",
    "square_pyramid", "bench",   "sofa",  "cup",    "hollow", "table", "car",
};

// Fills [x0, x0 + len) x [y0, y0 + wid) on layer z with bricks of direction d.
void tile_layer(std::vector<Primitive>& out, int x0, int y0, int len, int wid, int z, int d) {
  const int l1 = d == 0 ? 4 : 2, l2 = d == 0 ? 2 : 4;
  for (int x = x0; x < x0 + len; x += l1)
    for (int y = y0; y < y0 + wid; y += l2) out.push_back(Primitive{x, y, z, d});
}

// Solid box. On the grid of 2x2 stud blocks a brick is a domino, and two
// stacked bricks connect iff they share a block. Alternate edges of a
// Hamiltonian cycle through the blocks give two tilings whose union is one
// cycle, so consecutive layers always form a single connected piece.
void tile_box(std::vector<Primitive>& out, int x0, int y0, int z0, int len, int wid, int layers) {
  const int a = len / 2, b = wid / 2;
  std::vector<std::array<int, 2>> cycle;
  for (int x = 0; x < a; ++x) cycle.push_back({x, 0});
  for (int x = a - 1; x >= 1; --x)
    for (int r = 1; r < b; ++r) cycle.push_back({x, (a - 1 - x) % 2 == 0 ? r : b - r});
  for (int y = b - 1; y >= 1; --y) cycle.push_back({0, y});
  for (int k = 0; k < layers; ++k)
    for (std::size_t e = k % 2; e < cycle.size(); e += 2) {
      const auto& p = cycle[e];
      const auto& q = cycle[(e + 1) % cycle.size()];
      const int d = p[1] == q[1] ? 0 : 1;
      out.push_back(Primitive{x0 + 2 * std::min(p[0], q[0]), y0 + 2 * std::min(p[1], q[1]), z0 + k, d});
    }
}

// Two-stud-thick square ring of outer size s; corners alternate per layer.
void tile_ring(std::vector<Primitive>& out, int s, int z0, int layers) {
  for (int k = 0; k < layers; ++k) {
    const int z = z0 + k;
    if (k % 2 == 0) {
      tile_layer(out, 0, 0, s, 2, z, 0);
      tile_layer(out, 0, s - 2, s, 2, z, 0);
      tile_layer(out, 0, 2, 2, s - 4, z, 1);
      tile_layer(out, s - 2, 2, 2, s - 4, z, 1);
    } else {
      tile_layer(out, 0, 0, 2, s, z, 1);
      tile_layer(out, s - 2, 0, 2, s, z, 1);
      tile_layer(out, 2, 0, s - 4, 2, z, 0);
      tile_layer(out, 2, s - 2, s - 4, 2, z, 0);
    }
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

// Multiple of `step` and at least `min`; the message names the nearest fix.
void require_size(std::string_view cls, std::string_view name, int value, int step, int min) {
  if (value >= min && value % step == 0) return;
  const int fix = std::max(min, ((value + step - 1) / step) * step);
  const std::string problem = value < min ? " is below the minimum of " + std::to_string(min)
                                          : " is not tileable by 2x4 bricks";
  throw Error(std::string(cls) + " " + std::string(name) + " " + std::to_string(value) + problem +
              "; nearest feasible: " + std::to_string(fix));
}

}  // namespace

std::string_view to_string(ShapeClass c) { return kClassNames[static_cast<std::size_t>(c)]; }

std::optional<ShapeClass> parse_class(std::string_view s) {
  for (std::size_t i = 0; i < kClassNames.size(); ++i)
    if (kClassNames[i] == s) return static_cast<ShapeClass>(i);
  return std::nullopt;
}

char group_of(ShapeClass c) {
  const auto i = static_cast<int>(c);
  return i < 2 ? 'a' : (i < 8 ? 'b' : 'c');
}

std::optional<Violation> validate_sequence(std::span<const Primitive> seq) {
  if (seq.empty()) return Violation{0, "empty sequence"};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!seq[i].valid()) return Violation{i, "invalid brick"};
    if (i == 0) {
      if (seq[0].z != 0) return Violation{0, "not grounded"};
      continue;
    }
    bool contact = false;
    for (std::size_t j = 0; j < i; ++j) {
      if (overlaps(seq[i], seq[j])) return Violation{i, "overlap"};
      contact = contact || connects(seq[i], seq[j]);
    }
    if (!contact) return Violation{i, "no contact"};
  }
  return std::nullopt;
}

Combination order_for_assembly(std::vector<Primitive> bricks) {
  if (bricks.empty()) throw Error("empty brick set");
  std::sort(bricks.begin(), bricks.end());
  if (bricks.front().z != 0) throw Error("no brick on the ground layer");
  Combination seq{bricks.front()};
  std::vector<bool> placed(bricks.size(), false);
  placed[0] = true;
  while (seq.size() < bricks.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < bricks.size() && !progressed; ++i) {
      if (placed[i]) continue;
      if (std::any_of(seq.begin(), seq.end(), [&](const Primitive& p) { return connects(p, bricks[i]); })) {
        seq.push_back(bricks[i]);
        placed[i] = true;
        progressed = true;
      }
    }
    if (!progressed) throw Error("brick set is not connected");
  }
  return seq;
}

std::vector<ShapeInstance> generate_group_a() {
  const Combination origin{Primitive{0, 0, 0, 0}};
  std::vector<ShapeInstance> out;
  for (const auto& p : enumerate_attachments(origin, Bounds::unbounded()))
    out.push_back({p.d == 0 ? ShapeClass::kParallel : ShapeClass::kPerpendicular, {origin[0], p}});
  return out;
}

ShapeInstance generate_shape(ShapeClass label, const ShapeParams& prm) {
  const std::string_view cls = to_string(label);
  std::vector<Primitive> b;
  switch (label) {
    case ShapeClass::kParallel:
    case ShapeClass::kPerpendicular:
      throw Error("group A instances come from generate_group_a");
    case ShapeClass::kBar:
      require(prm.length >= 1, "bar length must be >= 1 brick");
      for (int k = 0; k < prm.length; ++k) b.push_back(Primitive{(k % 2) * 2, 0, k, 0});
      break;
    case ShapeClass::kLine:
      require(prm.length >= 1, "line length must be >= 1 brick");
      for (int i = 0; i < prm.length; ++i) b.push_back(Primitive{4 * i, 0, 0, 0});
      for (int i = 0; i + 1 < prm.length; ++i) b.push_back(Primitive{4 * i + 2, 0, 1, 0});
      break;
    case ShapeClass::kPlate:
      require_size(cls, "length", prm.length, 4, 4);
      require_size(cls, "width", prm.width, 4, 4);
      tile_box(b, 0, 0, 0, prm.length, prm.width, 2);
      break;
    case ShapeClass::kWall:
      require_size(cls, "length", prm.length, 4, prm.layers > 1 ? 8 : 4);
      require(prm.layers >= 1, "wall needs >= 1 layer");
      for (int k = 0; k < prm.layers; ++k) {
        const int offset = (k % 2) * 2;
        for (int x = offset; x + 4 <= prm.length - offset; x += 4) b.push_back(Primitive{x, 0, k, 0});
      }
      break;
    case ShapeClass::kCuboid:
      require(prm.layers >= 2, "cuboid needs >= 2 layers to interlock");
      require_size(cls, "length", prm.length, 4, 4);
      require_size(cls, "width", prm.width, 4, 4);
      tile_box(b, 0, 0, 0, prm.length, prm.width, prm.layers);
      break;
    case ShapeClass::kSquarePyramid:
      require_size(cls, "base", prm.length, 4, 4 * std::max(1, prm.levels));
      require(prm.levels >= 1, "pyramid needs >= 1 level");
      for (int lv = 0; lv < prm.levels; ++lv)
        tile_box(b, 2 * lv, 2 * lv, 2 * lv, prm.length - 4 * lv, prm.length - 4 * lv, 2);
      break;
    case ShapeClass::kTable:
      // Four 4x4 legs of `layers` layers under a two-layer top.
      require_size(cls, "length", prm.length, 4, 8);
      require_size(cls, "width", prm.width, 4, 8);
      require(prm.layers >= 1, "table legs need >= 1 layer");
      for (int x : {0, prm.length - 4})
        for (int y : {0, prm.width - 4}) tile_box(b, x, y, 0, 4, 4, prm.layers);
      tile_box(b, 0, 0, prm.layers, prm.length, prm.width, 2);
      break;
    case ShapeClass::kBench:
      // Two full-depth slab legs under a two-layer seat.
      require_size(cls, "length", prm.length, 4, 12);
      require_size(cls, "width", prm.width, 4, 4);
      require(prm.layers >= 1, "bench legs need >= 1 layer");
      for (int x : {0, prm.length - 4}) tile_box(b, x, 0, 0, 4, prm.width, prm.layers);
      tile_box(b, 0, 0, prm.layers, prm.length, prm.width, 2);
      break;
    case ShapeClass::kSofa:
      // Seat, then a backrest of `layers` layers and two armrests.
      require_size(cls, "length", prm.length, 4, 12);
      require_size(cls, "width", prm.width, 4, 8);
      require(prm.layers >= 2, "sofa backrest needs >= 2 layers");
      tile_box(b, 0, 0, 0, prm.length, prm.width, 2);
      tile_box(b, 0, prm.width - 4, 2, prm.length, 4, prm.layers);
      for (int x : {0, prm.length - 4}) tile_box(b, x, 0, 2, 4, prm.width - 4, 2);
      break;
    case ShapeClass::kCup:
      require_size(cls, "size", prm.length, 4, 8);
      require(prm.layers >= 1, "cup wall needs >= 1 layer");
      tile_box(b, 0, 0, 0, prm.length, prm.length, 2);
      tile_ring(b, prm.length, 2, prm.layers);
      break;
    case ShapeClass::kHollow:
      require_size(cls, "size", prm.length, 4, 8);
      require(prm.layers >= 2, "hollow needs >= 2 layers to interlock");
      tile_ring(b, prm.length, 0, prm.layers);
      break;
    case ShapeClass::kCar: {
      // Four wheel bricks, a two-layer chassis and a centered cabin.
      require_size(cls, "length", prm.length, 4, 8);
      require_size(cls, "width", prm.width, 4, 4);
      for (int x : {0, prm.length - 4})
        for (int y : {0, prm.width - 2}) b.push_back(Primitive{x, y, 0, 0});
      tile_box(b, 0, 0, 1, prm.length, prm.width, 2);
      const int cabin = std::max(4, (prm.length / 2) / 4 * 4);
      tile_box(b, (prm.length - cabin) / 2, 0, 3, cabin, prm.width, 2);
      break;
    }
  }
  ShapeInstance inst{label, order_for_assembly(std::move(b))};
  if (auto v = validate_sequence(inst.bricks))
    throw Error("generated " + std::string(cls) + " is invalid at brick " + std::to_string(v->index) + ": " + v->reason);
  return inst;
}

std::vector<ShapeInstance> generate_group(char group, int per_class) {
  if (group == 'a') return generate_group_a();
  if (group != 'b' && group != 'c') throw Error("unknown group");
  std::vector<ShapeInstance> out;
  for (ShapeClass label : kAllClasses) {
    if (group_of(label) != group) continue;
    for (int i = 0; i < per_class; ++i) {
      ShapeParams p;
      const int a = i % 4, c = (i / 4) % 3;
      switch (label) {
        case ShapeClass::kBar: p.length = 2 + i; break;
        case ShapeClass::kLine: p.length = 2 + i; break;
        case ShapeClass::kPlate: p = {4 * (1 + a), 4 * (1 + c), 2, 1}; break;
        case ShapeClass::kWall: p = {8 + 4 * a, 2, 2 + c + i / 12, 1}; break;
        case ShapeClass::kCuboid: p = {4 * (1 + a), 4 * (1 + c), 2 + i / 12, 1}; break;
        case ShapeClass::kSquarePyramid: p = {8 + 4 * a, 0, 2, 1 + (i % 2) * (1 + a) / 2}; break;
        case ShapeClass::kTable: p = {8 + 4 * a, 8 + 4 * c, 2 + i / 12, 1}; break;
        case ShapeClass::kBench: p = {12 + 4 * a, 4 + 4 * c, 2 + i / 12, 1}; break;
        case ShapeClass::kSofa: p = {12 + 4 * a, 8 + 4 * c, 2 + i / 12, 1}; break;
        case ShapeClass::kCup:
        case ShapeClass::kHollow: p = {8 + 4 * a, 0, 2 + c + i / 12, 1}; break;
        case ShapeClass::kCar: p = {8 + 4 * a, 4 + 4 * c, 2, 1}; break;
        default: break;
      }
      out.push_back(generate_shape(label, p));
    }
  }
  return out;
}

std::vector<Combination> augment(const ShapeInstance& instance, std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const auto& bricks = instance.bricks;
  std::vector<Combination> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    Combination seq;
    std::vector<bool> used(bricks.size(), false);
    while (seq.size() < bricks.size()) {
      std::vector<std::size_t> options;
      for (std::size_t i = 0; i < bricks.size(); ++i) {
        if (used[i]) continue;
        const bool ok = seq.empty() ? bricks[i].z == 0
                                    : std::any_of(seq.begin(), seq.end(),
                                                  [&](const Primitive& p) { return connects(p, bricks[i]); });
        if (ok) options.push_back(i);
      }
      if (options.empty()) throw Error("instance has no valid assembly order");
      const std::size_t pick = options[rng.index(options.size())];
      used[pick] = true;
      seq.push_back(bricks[pick]);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<ClassStats> stats(std::span<const ShapeInstance> collection) {
  std::vector<ClassStats> out;
  for (ShapeClass label : kAllClasses) {
    std::vector<double> sizes;
    for (const auto& inst : collection)
      if (inst.label == label) sizes.push_back(static_cast<double>(inst.bricks.size()));
    if (sizes.empty()) continue;
    ClassStats s{label, sizes.size(), 0.0, 0.0};
    for (double x : sizes) s.mean += x;
    s.mean /= static_cast<double>(sizes.size());
    double var = 0.0;
    for (double x : sizes) var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(sizes.size()));
    out.push_back(s);
  }
  return out;
}

}  // namespace brickbo
