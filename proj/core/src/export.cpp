#include "brickbo/export.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "brickbo/error.hpp"

namespace brickbo {

namespace {

// Cuboid corner i has bits (x, y, z). Triangles wind counter-clockwise seen
// from outside.
constexpr std::array<std::array<int, 3>, 12> kCuboidFaces{{
    {0, 2, 1}, {1, 2, 3},  // bottom (z = 0)
    {4, 5, 6}, {5, 7, 6},  // top
    {0, 1, 4}, {1, 5, 4},  // y = 0
    {2, 6, 3}, {3, 6, 7},  // y = 1
    {0, 4, 2}, {2, 4, 6},  // x = 0
    {1, 3, 5}, {3, 7, 5},  // x = 1
}};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

MeshDoc build_mesh(std::span<const Primitive> c, const MeshOptions& opts) {
  if (c.empty()) throw Error("empty combination");
  MeshDoc mesh;
  for (std::size_t b = 0; b < c.size(); ++b) {
    const auto& p = c[b];
    const int base = static_cast<int>(mesh.vertices.size());
    for (int corner = 0; corner < 8; ++corner) {
      const double x = (p.a1 + ((corner & 1) ? p.length1() : 0)) * opts.stud;
      const double y = (p.a2 + ((corner & 2) ? p.length2() : 0)) * opts.stud;
      const double z = (p.z + ((corner & 4) ? 1 : 0)) * opts.layer_height;
      mesh.vertices.push_back({x, y, z});
    }
    for (const auto& f : kCuboidFaces) mesh.faces.push_back({base + f[0], base + f[1], base + f[2]});
    mesh.groups.push_back("brick_" + std::to_string(b));
  }
  return mesh;
}

std::string to_obj(std::span<const Primitive> c, const MeshOptions& opts) {
  const MeshDoc mesh = build_mesh(c, opts);
  std::ostringstream out;
  out << "# bricks " << c.size() << "\n";
  for (std::size_t b = 0; b < mesh.groups.size(); ++b) {
    out << "g " << mesh.groups[b] << "\n";
    for (std::size_t v = 8 * b; v < 8 * b + 8; ++v)
      out << "v " << format_number(mesh.vertices[v][0]) << ' ' << format_number(mesh.vertices[v][1]) << ' '
          << format_number(mesh.vertices[v][2]) << "\n";
    for (std::size_t f = 12 * b; f < 12 * b + 12; ++f)
      out << "f " << mesh.faces[f][0] + 1 << ' ' << mesh.faces[f][1] + 1 << ' ' << mesh.faces[f][2] + 1 << "\n";
  }
  return out.str();
}

std::string to_voxels(std::span<const Primitive> c, std::array<int, 3> extents) {
  const auto [m1, m2, m3] = extents;
  if (m1 <= 0 || m2 <= 0 || m3 <= 0) throw Error("voxel extents must be positive");
  std::vector<unsigned char> grid(static_cast<std::size_t>(m1) * m2 * m3, 0);
  for (const auto& p : c)
    for (const auto& cell : footprint(p)) {
      if (cell.i < 0 || cell.j < 0 || cell.k < 0 || cell.i >= m1 || cell.j >= m2 || cell.k >= m3)
        throw Error("brick outside voxel extents");
      grid[static_cast<std::size_t>(cell.i) + static_cast<std::size_t>(m1) * (cell.j + static_cast<std::size_t>(m2) * cell.k)] = 1;
    }
  std::ostringstream out;
  out << "VOXRLE v1 " << m1 << ' ' << m2 << ' ' << m3 << "\n";
  std::size_t i = 0;
  while (i < grid.size()) {
    std::size_t j = i;
    while (j < grid.size() && grid[j] == grid[i]) ++j;
    out << static_cast<int>(grid[i]) << ' ' << (j - i) << "\n";
    i = j;
  }
  return out.str();
}

std::size_t VoxelGrid::ones() const { return static_cast<std::size_t>(std::count(values.begin(), values.end(), 1)); }

bool VoxelGrid::at(int i, int j, int k) const {
  return values[static_cast<std::size_t>(i) +
                static_cast<std::size_t>(extents[0]) * (j + static_cast<std::size_t>(extents[1]) * k)] != 0;
}

VoxelGrid parse_voxels(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic, version;
  VoxelGrid g;
  if (!(in >> magic >> version >> g.extents[0] >> g.extents[1] >> g.extents[2]) || magic != "VOXRLE" ||
      version != "v1")
    throw Error("not a VOXRLE v1 file");
  if (g.extents[0] <= 0 || g.extents[1] <= 0 || g.extents[2] <= 0) throw Error("bad voxel extents");
  const std::size_t total = static_cast<std::size_t>(g.extents[0]) * g.extents[1] * g.extents[2];
  int value = 0;
  std::size_t run = 0;
  while (in >> value >> run) {
    if ((value != 0 && value != 1) || run == 0 || g.values.size() + run > total) throw Error("bad voxel run");
    g.values.insert(g.values.end(), run, static_cast<unsigned char>(value));
  }
  if (!in.eof() || g.values.size() != total) throw Error("voxel runs do not cover the grid");
  return g;
}

}  // namespace brickbo
