#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brickbo/lattice.hpp"

namespace brickbo {

struct MeshOptions {
  double stud = 1.0;          ///< plan size of one stud
  double layer_height = 1.2;  ///< height of one layer, in stud units
};

struct MeshDoc {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;  ///< zero-based vertex indices
  std::vector<std::string> groups;        ///< one per brick, 12 faces each
};

/// One closed cuboid per brick (8 vertices, 12 outward triangles); studs omitted.
MeshDoc build_mesh(std::span<const Primitive> c, const MeshOptions& opts = {});

/// Wavefront OBJ text with one group brick_<index> per brick. Axis 1 -> x,
/// axis 2 -> y, layers -> z. Throws on an empty combination.
std::string to_obj(std::span<const Primitive> c, const MeshOptions& opts = {});

/// Dense 0/1 occupancy grid over [0, m1) x [0, m2) x [0, m3).
///
/// Text format:
///   VOXRLE v1 m1 m2 m3
///   <value> <run length>      (one run per line)
/// Cells are visited with axis 1 fastest, then axis 2, then layers.
/// Throws when a brick leaves the extents.
std::string to_voxels(std::span<const Primitive> c, std::array<int, 3> extents);

struct VoxelGrid {
  std::array<int, 3> extents{};
  std::vector<unsigned char> values;  ///< in the same visiting order

  std::size_t ones() const;
  bool at(int i, int j, int k) const;
};

/// Parses the VOXRLE v1 format. Throws Error on malformed input.
VoxelGrid parse_voxels(std::string_view text);

}  // namespace brickbo
