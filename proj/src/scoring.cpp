#include "geodock/scoring.hpp"

#include <cmath>

#include "geodock/errors.hpp"

namespace geodock {

double sample_field(const Pocket& pocket, const Vec3& p) {
  const double gx = (p.x - pocket.origin.x) / pocket.spacing;
  const double gy = (p.y - pocket.origin.y) / pocket.spacing;
  const double gz = (p.z - pocket.origin.z) / pocket.spacing;
  const double mx = static_cast<double>(pocket.dims[0] - 1);
  const double my = static_cast<double>(pocket.dims[1] - 1);
  const double mz = static_cast<double>(pocket.dims[2] - 1);
  if (gx < 0.0 || gy < 0.0 || gz < 0.0 || gx > mx || gy > my || gz > mz) {
    return 0.0;  // outside the grid by contract
  }

  std::size_t ix = static_cast<std::size_t>(gx);
  std::size_t iy = static_cast<std::size_t>(gy);
  std::size_t iz = static_cast<std::size_t>(gz);
  if (ix > pocket.dims[0] - 2) ix = pocket.dims[0] - 2;  // p on the far face
  if (iy > pocket.dims[1] - 2) iy = pocket.dims[1] - 2;
  if (iz > pocket.dims[2] - 2) iz = pocket.dims[2] - 2;
  const double fx = gx - static_cast<double>(ix);
  const double fy = gy - static_cast<double>(iy);
  const double fz = gz - static_cast<double>(iz);

  const double c00 = pocket.at(ix, iy, iz) * (1.0 - fx) + pocket.at(ix + 1, iy, iz) * fx;
  const double c10 = pocket.at(ix, iy + 1, iz) * (1.0 - fx) + pocket.at(ix + 1, iy + 1, iz) * fx;
  const double c01 = pocket.at(ix, iy, iz + 1) * (1.0 - fx) + pocket.at(ix + 1, iy, iz + 1) * fx;
  const double c11 =
      pocket.at(ix, iy + 1, iz + 1) * (1.0 - fx) + pocket.at(ix + 1, iy + 1, iz + 1) * fx;
  const double c0 = c00 * (1.0 - fy) + c10 * fy;
  const double c1 = c01 * (1.0 - fy) + c11 * fy;
  return c0 * (1.0 - fz) + c1 * fz;
}

Score score_pose(const Ligand& ligand, const Pocket& pocket) {
  if (ligand.atoms.empty()) throw ContractError("cannot score a ligand with no atoms");
  double sum = 0.0;
  for (const Atom& a : ligand.atoms) sum += sample_field(pocket, a.position);
  return sum / static_cast<double>(ligand.atoms.size());
}

bool bump_check(const Ligand& ligand, double clash_factor) {
  if (!(clash_factor > 0.0) || clash_factor > 1.0) {
    throw ContractError("clash_factor must lie in (0, 1]");
  }
  const std::size_t n = ligand.atoms.size();
  for (std::size_t a = 0; a + 1 < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (ligand.bonded(a, b)) continue;
      const Vec3 d = ligand.atoms[a].position - ligand.atoms[b].position;
      const double threshold = clash_factor * (ligand.atoms[a].radius + ligand.atoms[b].radius);
      if (dot(d, d) < threshold * threshold) return false;
    }
  }
  return true;
}

}  // namespace geodock
