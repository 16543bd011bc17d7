#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "geodock/geometry.hpp"

namespace geodock {

struct Atom {
  Vec3 position;        // Ångström
  double radius = 1.0;  // Ångström, > 0
};

using Bond = std::pair<std::size_t, std::size_t>;

/// A rotatable bond. Deleting the edge (atom_i, atom_j) from the bond graph
/// must split it in two; the moving side is the component containing atom_j.
struct Rotamer {
  std::size_t atom_i = 0;
  std::size_t atom_j = 0;
  std::vector<std::size_t> moving_set;  // sorted; cached by finalize_ligand
};

/// Config limit, not a structural constant: molecules with more rotatable
/// bonds exist but are out of range for this tool.
inline constexpr std::size_t kMaxRotamers = 128;

/// The unit of work. Immutable after construction; every operation that
/// changes coordinates returns a new value.
struct Ligand {
  std::string name;
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::vector<Rotamer> rotamers;
  std::vector<double> dihedrals;  // radians in [0, 2pi), one per rotamer

  // n*n bonded-pair lookup, filled by finalize_ligand. Falls back to a
  // linear scan of `bonds` when empty so hand-assembled values still work.
  std::vector<bool> adjacency;

  bool bonded(std::size_t a, std::size_t b) const;
  std::vector<Vec3> positions() const;
};

/// Validates, then fills the adjacency and moving-set caches.
/// Throws ValidationError when any invariant fails.
Ligand make_ligand(std::string name, std::vector<Atom> atoms, std::vector<Bond> bonds,
                   std::vector<Bond> rotamer_bonds);

/// Fills the adjacency matrix and each rotamer's moving set in place.
/// Throws InvalidRotamerError if a rotamer bond lies on a ring.
void finalize_ligand(Ligand& ligand);

/// (moving, fixed) atom-index partition induced by the given rotamer.
/// Uses the cached moving set when present.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> fragment_partition(
    const Ligand& ligand, std::size_t rotamer_index);

/// Rotates the moving fragment about the bond axis by `angle` radians.
/// Atoms outside the moving set, and the axis atoms themselves, are returned
/// bit-identically; angle 0 returns the input unchanged.
Ligand rotate_fragment(const Ligand& ligand, std::size_t rotamer_index, double angle);

/// All invariant violations, or empty when the ligand is well formed.
std::vector<std::string> validate_ligand(const Ligand& ligand);

/// Bitwise equality of coordinates and dihedral state.
bool same_pose(const Ligand& a, const Ligand& b);

}  // namespace geodock
