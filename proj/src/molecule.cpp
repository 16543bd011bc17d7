#include "geodock/molecule.hpp"

#include <algorithm>
#include <cmath>

#include "geodock/errors.hpp"

namespace geodock {

namespace {

std::vector<std::vector<std::size_t>> adjacency_lists(std::size_t n,
                                                      const std::vector<Bond>& bonds) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Bond& b : bonds) {
    adj[b.first].push_back(b.second);
    adj[b.second].push_back(b.first);
  }
  return adj;
}

/// Atoms reachable from `start`, optionally pretending one edge is deleted.
std::vector<bool> reachable(const std::vector<std::vector<std::size_t>>& adj, std::size_t start,
                            std::size_t skip_a = static_cast<std::size_t>(-1),
                            std::size_t skip_b = static_cast<std::size_t>(-1)) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u]) {
      if ((u == skip_a && v == skip_b) || (u == skip_b && v == skip_a)) continue;
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

std::vector<std::size_t> component_of_j(const std::vector<std::vector<std::size_t>>& adj,
                                        std::size_t i, std::size_t j) {
  const std::vector<bool> seen = reachable(adj, j, i, j);
  std::vector<std::size_t> moving;
  for (std::size_t a = 0; a < seen.size(); ++a) {
    if (seen[a]) moving.push_back(a);
  }
  return moving;  // sorted by construction
}

bool bonds_in_range(const Ligand& lig) {
  for (const Bond& b : lig.bonds) {
    if (b.first >= lig.atoms.size() || b.second >= lig.atoms.size()) return false;
  }
  return true;
}

}  // namespace

bool Ligand::bonded(std::size_t a, std::size_t b) const {
  const std::size_t n = atoms.size();
  if (adjacency.size() == n * n) return adjacency[a * n + b];
  for (const Bond& bond : bonds) {
    if ((bond.first == a && bond.second == b) || (bond.first == b && bond.second == a)) {
      return true;
    }
  }
  return false;
}

std::vector<Vec3> Ligand::positions() const {
  std::vector<Vec3> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back(a.position);
  return out;
}

void finalize_ligand(Ligand& ligand) {
  const std::size_t n = ligand.atoms.size();
  ligand.adjacency.assign(n * n, false);
  for (const Bond& b : ligand.bonds) {
    ligand.adjacency[b.first * n + b.second] = true;
    ligand.adjacency[b.second * n + b.first] = true;
  }
  const auto adj = adjacency_lists(n, ligand.bonds);
  for (Rotamer& r : ligand.rotamers) {
    const std::vector<bool> seen = reachable(adj, r.atom_j, r.atom_i, r.atom_j);
    if (seen[r.atom_i]) {
      throw InvalidRotamerError("rotamer bond (" + std::to_string(r.atom_i) + "," +
                                std::to_string(r.atom_j) + ") does not disconnect graph");
    }
    r.moving_set.clear();
    for (std::size_t a = 0; a < n; ++a) {
      if (seen[a]) r.moving_set.push_back(a);
    }
  }
}

Ligand make_ligand(std::string name, std::vector<Atom> atoms, std::vector<Bond> bonds,
                   std::vector<Bond> rotamer_bonds) {
  Ligand lig;
  lig.name = std::move(name);
  lig.atoms = std::move(atoms);
  lig.bonds = std::move(bonds);
  lig.rotamers.reserve(rotamer_bonds.size());
  for (const Bond& rb : rotamer_bonds) lig.rotamers.push_back({rb.first, rb.second, {}});
  lig.dihedrals.assign(lig.rotamers.size(), 0.0);

  const std::vector<std::string> violations = validate_ligand(lig);
  if (!violations.empty()) throw ValidationError(lig.name, violations);
  finalize_ligand(lig);
  return lig;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> fragment_partition(
    const Ligand& ligand, std::size_t rotamer_index) {
  if (rotamer_index >= ligand.rotamers.size()) {
    throw ContractError("rotamer index out of range");
  }
  const Rotamer& r = ligand.rotamers[rotamer_index];
  std::vector<std::size_t> moving = r.moving_set;
  if (moving.empty()) {
    // No cache: derive the partition from the bond graph.
    const auto adj = adjacency_lists(ligand.atoms.size(), ligand.bonds);
    const std::vector<bool> seen = reachable(adj, r.atom_j, r.atom_i, r.atom_j);
    if (seen[r.atom_i]) {
      throw InvalidRotamerError("rotamer bond (" + std::to_string(r.atom_i) + "," +
                                std::to_string(r.atom_j) + ") does not disconnect graph");
    }
    for (std::size_t a = 0; a < seen.size(); ++a) {
      if (seen[a]) moving.push_back(a);
    }
  }
  std::vector<bool> is_moving(ligand.atoms.size(), false);
  for (std::size_t a : moving) is_moving[a] = true;
  std::vector<std::size_t> fixed;
  for (std::size_t a = 0; a < ligand.atoms.size(); ++a) {
    if (!is_moving[a]) fixed.push_back(a);
  }
  return {std::move(moving), std::move(fixed)};
}

Ligand rotate_fragment(const Ligand& ligand, std::size_t rotamer_index, double angle) {
  if (rotamer_index >= ligand.rotamers.size()) {
    throw ContractError("rotamer index out of range");
  }
  if (angle == 0.0) return ligand;  // identity must be bit-exact

  const Rotamer& rot = ligand.rotamers[rotamer_index];
  const Vec3 pi_pos = ligand.atoms[rot.atom_i].position;
  const Vec3 pj_pos = ligand.atoms[rot.atom_j].position;
  const Vec3 delta = pj_pos - pi_pos;
  const double len = norm(delta);
  if (len < 1e-12) {
    throw DegenerateAxisError("rotamer axis atoms coincide in ligand '" + ligand.name + "'");
  }
  const Vec3 axis = (1.0 / len) * delta;
  const Rotation r = Rotation::about_axis(axis, angle);

  Ligand out = ligand;
  const auto moving = rot.moving_set.empty()
                          ? fragment_partition(ligand, rotamer_index).first
                          : rot.moving_set;
  for (std::size_t a : moving) {
    if (a == rot.atom_j) continue;  // axis atoms stay put, bit-exactly
    out.atoms[a].position = rotated_about(ligand.atoms[a].position, pi_pos, r);
  }
  double d = std::fmod(ligand.dihedrals[rotamer_index] + angle, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  out.dihedrals[rotamer_index] = d;
  return out;
}

std::vector<std::string> validate_ligand(const Ligand& lig) {
  std::vector<std::string> out;
  const std::size_t n = lig.atoms.size();

  if (n == 0) {
    out.push_back("ligand has no atoms");
    return out;
  }
  for (std::size_t a = 0; a < n; ++a) {
    const Atom& atom = lig.atoms[a];
    if (!(atom.radius > 0.0)) {
      out.push_back("atom " + std::to_string(a) + " has non-positive radius");
    }
    if (!std::isfinite(atom.position.x) || !std::isfinite(atom.position.y) ||
        !std::isfinite(atom.position.z)) {
      out.push_back("atom " + std::to_string(a) + " has non-finite coordinates");
    }
  }
  bool indices_ok = bonds_in_range(lig);
  if (!indices_ok) out.push_back("bond index out of range");
  for (const Bond& b : lig.bonds) {
    if (b.first == b.second) out.push_back("self-bond on atom " + std::to_string(b.first));
  }
  if (lig.dihedrals.size() != lig.rotamers.size()) {
    out.push_back("dihedral count does not match rotamer count");
  }
  if (lig.rotamers.size() > kMaxRotamers) {
    out.push_back("rotamer count exceeds the supported limit of " + std::to_string(kMaxRotamers));
  }
  if (!indices_ok) return out;  // graph checks below need valid indices

  const auto adj = adjacency_lists(n, lig.bonds);
  const std::vector<bool> seen = reachable(adj, 0);
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    out.push_back("bond graph is not connected");
  } else {
    for (std::size_t ri = 0; ri < lig.rotamers.size(); ++ri) {
      const Rotamer& r = lig.rotamers[ri];
      if (r.atom_i >= n || r.atom_j >= n) {
        out.push_back("rotamer " + std::to_string(ri) + " atom index out of range");
        continue;
      }
      if (!lig.bonded(r.atom_i, r.atom_j)) {
        out.push_back("rotamer bond (" + std::to_string(r.atom_i) + "," +
                      std::to_string(r.atom_j) + ") is not a bond");
        continue;
      }
      const std::vector<bool> side = reachable(adj, r.atom_j, r.atom_i, r.atom_j);
      if (side[r.atom_i]) {
        out.push_back("rotamer bond (" + std::to_string(r.atom_i) + "," +
                      std::to_string(r.atom_j) + ") does not disconnect graph");
        continue;
      }
      if (!r.moving_set.empty()) {
        const std::vector<std::size_t> expected = component_of_j(adj, r.atom_i, r.atom_j);
        if (r.moving_set != expected) {
          out.push_back("rotamer " + std::to_string(ri) + " cached moving set is stale");
        }
      }
    }
  }
  return out;
}

bool same_pose(const Ligand& a, const Ligand& b) {
  if (a.atoms.size() != b.atoms.size() || a.dihedrals.size() != b.dihedrals.size()) return false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    if (!(a.atoms[i].position == b.atoms[i].position)) return false;
    if (a.atoms[i].radius != b.atoms[i].radius) return false;
  }
  for (std::size_t i = 0; i < a.dihedrals.size(); ++i) {
    if (a.dihedrals[i] != b.dihedrals[i]) return false;
  }
  return true;
}

}  // namespace geodock
