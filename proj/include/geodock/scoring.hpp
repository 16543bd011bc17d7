#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "geodock/geometry.hpp"
#include "geodock/molecule.hpp"

namespace geodock {

/// Pose desirability in [0, 1]. Plain double: never NaN, totally ordered.
using Score = double;

/// Regular scalar field over the binding site. Values in [0, 1],
/// x-fastest linear layout. Immutable once loaded; shared read-only by
/// every worker and lane.
struct Pocket {
  Vec3 origin;
  double spacing = 1.0;                    // Å per voxel
  std::array<std::size_t, 3> dims{2, 2, 2};  // nx, ny, nz; each >= 2
  std::vector<double> field;               // dims[0]*dims[1]*dims[2] values

  double at(std::size_t ix, std::size_t iy, std::size_t iz) const {
    return field[(iz * dims[1] + iy) * dims[0] + ix];
  }
  double& at(std::size_t ix, std::size_t iy, std::size_t iz) {
    return field[(iz * dims[1] + iy) * dims[0] + ix];
  }

  Vec3 bounds_lo() const { return origin; }
  Vec3 bounds_hi() const {
    return origin + spacing * Vec3{static_cast<double>(dims[0] - 1),
                                   static_cast<double>(dims[1] - 1),
                                   static_cast<double>(dims[2] - 1)};
  }
};

/// Trilinear interpolation of the field at p; 0.0 exactly outside the grid.
double sample_field(const Pocket& pocket, const Vec3& p);

/// Mean field occupancy over the atoms, accumulated in atom order so equal
/// poses give bit-identical scores on any worker. The hot kernel: one field
/// fetch per atom, no allocation.
Score score_pose(const Ligand& ligand, const Pocket& pocket);

/// Steric validity: every non-bonded atom pair must satisfy
/// distance >= clash_factor * (radius_a + radius_b). Equality passes.
bool bump_check(const Ligand& ligand, double clash_factor);

}  // namespace geodock
