#pragma once

#include <cstdint>
#include <vector>

#include "geodock/molecule.hpp"
#include "geodock/scoring.hpp"

namespace geodock {

/// Synthetic pocket: a sum of Gaussian blobs clamped to [0, 1].
struct PocketSpec {
  std::array<std::size_t, 3> dims{24, 24, 24};
  double spacing = 0.75;
  Vec3 origin{0.0, 0.0, 0.0};
  unsigned blobs = 6;
  std::uint64_t seed = 0;
};

Pocket make_pocket(const PocketSpec& spec);

/// Random tree-shaped ligands with fixed atom and rotamer counts.
/// Deterministic in the seed; rerunning yields identical molecules.
struct LibrarySpec {
  std::size_t count = 100;
  std::size_t atoms = 16;
  std::size_t rotamers = 4;  // clamped to atoms - 1
  std::uint64_t seed = 0;
};

std::vector<Ligand> make_library(const LibrarySpec& spec);

}  // namespace geodock
