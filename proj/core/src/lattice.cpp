#include "brickbo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "brickbo/error.hpp"

namespace brickbo {

Primitive Primitive::from_center(double c1, double c2, int z, int d) {
  Primitive p{0, 0, z, d};
  p.a1 = static_cast<int>(std::lround(c1 - p.length1() / 2.0));
  p.a2 = static_cast<int>(std::lround(c2 - p.length2() / 2.0));
  return p;
}

bool Bounds::contains(const Primitive& p) const {
  return p.z >= 0 && p.a1 >= lo[0] && p.a1 + p.length1() <= hi[0] && p.a2 >= lo[1] &&
         p.a2 + p.length2() <= hi[1] && p.z >= lo[2] && p.z < hi[2];
}

std::array<Cell, 8> footprint(const Primitive& p) {
  std::array<Cell, 8> cells{};
  std::size_t n = 0;
  for (int i = 0; i < p.length1(); ++i)
    for (int j = 0; j < p.length2(); ++j) cells[n++] = Cell{p.a1 + i, p.a2 + j, p.z};
  return cells;
}

int plan_overlap_area(const Primitive& p, const Primitive& q) {
  const int w1 = std::min(p.a1 + p.length1(), q.a1 + q.length1()) - std::max(p.a1, q.a1);
  const int w2 = std::min(p.a2 + p.length2(), q.a2 + q.length2()) - std::max(p.a2, q.a2);
  return (w1 > 0 && w2 > 0) ? w1 * w2 : 0;
}

bool connects(const Primitive& p, const Primitive& q) {
  return std::abs(p.z - q.z) == 1 && plan_overlap_area(p, q) > 0;
}

bool overlaps(const Primitive& p, const Primitive& q) {
  return p.z == q.z && plan_overlap_area(p, q) > 0;
}

CellSet occupied_cells(std::span<const Primitive> bricks) {
  CellSet cells;
  cells.reserve(bricks.size() * 8);
  for (const auto& b : bricks)
    for (const auto& c : footprint(b)) cells.insert(c);
  return cells;
}

std::vector<Primitive> enumerate_attachments(std::span<const Primitive> c, const Bounds& bounds) {
  if (c.empty()) throw Error("no structure to attach to");
  const CellSet occupied = occupied_cells(c);
  PrimitiveSet seen;
  std::vector<Primitive> out;
  for (const auto& b : c) {
    for (int dz : {-1, 1}) {
      const int z = b.z + dz;
      if (z < 0) continue;
      for (int d : {0, 1}) {
        const int l1 = d == 0 ? 4 : 2;
        const int l2 = d == 0 ? 2 : 4;
        for (int a1 = b.a1 - l1 + 1; a1 < b.a1 + b.length1(); ++a1) {
          for (int a2 = b.a2 - l2 + 1; a2 < b.a2 + b.length2(); ++a2) {
            const Primitive p{a1, a2, z, d};
            if (!bounds.contains(p) || seen.contains(p)) continue;
            seen.insert(p);
            const auto cells = footprint(p);
            if (std::none_of(cells.begin(), cells.end(),
                             [&](const Cell& x) { return occupied.contains(x); }))
              out.push_back(p);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Primitive> sample_from(std::span<const Primitive> feasible, std::size_t count, Rng& rng) {
  std::vector<Primitive> out;
  for (std::size_t i : rng.sample_indices(feasible.size(), count)) out.push_back(feasible[i]);
  return out;
}

std::vector<Primitive> sample_attachments(std::span<const Primitive> c, const Bounds& bounds,
                                          std::size_t count, std::uint64_t seed) {
  const auto feasible = enumerate_attachments(c, bounds);
  if (feasible.empty()) throw SaturatedError();
  Rng rng(seed);
  return sample_from(feasible, count, rng);
}

int connected_components(std::span<const Primitive> bricks) {
  const std::size_t n = bricks.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (connects(bricks[i], bricks[j])) {
        const auto ri = find(i), rj = find(j);
        if (ri != rj) {
          parent[ri] = rj;
          --components;
        }
      }
  return components;
}

std::optional<std::size_t> first_violation(std::span<const Primitive> bricks) {
  for (std::size_t i = 0; i < bricks.size(); ++i) {
    if (!bricks[i].valid()) return i;
    bool connected = i == 0;
    for (std::size_t j = 0; j < i; ++j) {
      if (overlaps(bricks[i], bricks[j])) return i;
      connected = connected || connects(bricks[i], bricks[j]);
    }
    if (!connected) return i;
  }
  return std::nullopt;
}

}  // namespace brickbo
