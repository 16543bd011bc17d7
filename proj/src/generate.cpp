#include "geodock/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "geodock/prng.hpp"

namespace geodock {

namespace {

Vec3 random_unit_vector(SplitMix64& rng) {
  // Marsaglia's method; rejection keeps the distribution uniform.
  while (true) {
    const double u = rng.uniform(-1.0, 1.0);
    const double v = rng.uniform(-1.0, 1.0);
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double f = 2.0 * std::sqrt(1.0 - s);
    return {u * f, v * f, 1.0 - 2.0 * s};
  }
}

}  // namespace

Pocket make_pocket(const PocketSpec& spec) {
  SplitMix64 rng(mix_seed(spec.seed, fnv1a64("pocket")));
  Pocket pocket;
  pocket.origin = spec.origin;
  pocket.spacing = spec.spacing;
  pocket.dims = spec.dims;
  pocket.field.assign(spec.dims[0] * spec.dims[1] * spec.dims[2], 0.0);

  const Vec3 lo = pocket.bounds_lo();
  const Vec3 hi = pocket.bounds_hi();
  struct Blob {
    Vec3 center;
    double inv_two_sigma_sq;
    double amplitude;
  };
  std::vector<Blob> blobs;
  blobs.reserve(spec.blobs);
  for (unsigned b = 0; b < spec.blobs; ++b) {
    const Vec3 center{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y), rng.uniform(lo.z, hi.z)};
    const double sigma = rng.uniform(2.0, 5.0);
    blobs.push_back({center, 1.0 / (2.0 * sigma * sigma), rng.uniform(0.4, 1.0)});
  }

  for (std::size_t iz = 0; iz < spec.dims[2]; ++iz) {
    for (std::size_t iy = 0; iy < spec.dims[1]; ++iy) {
      for (std::size_t ix = 0; ix < spec.dims[0]; ++ix) {
        const Vec3 p = pocket.origin + spec.spacing * Vec3{static_cast<double>(ix),
                                                           static_cast<double>(iy),
                                                           static_cast<double>(iz)};
        double v = 0.0;
        for (const Blob& blob : blobs) {
          const Vec3 d = p - blob.center;
          v += blob.amplitude * std::exp(-dot(d, d) * blob.inv_two_sigma_sq);
        }
        pocket.at(ix, iy, iz) = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return pocket;
}

std::vector<Ligand> make_library(const LibrarySpec& spec) {
  std::vector<Ligand> library;
  library.reserve(spec.count);
  const std::size_t n_atoms = std::max<std::size_t>(1, spec.atoms);
  const std::size_t n_rotamers =
      std::min(spec.rotamers, n_atoms > 0 ? n_atoms - 1 : 0);

  for (std::size_t index = 0; index < spec.count; ++index) {
    SplitMix64 rng(mix_seed(mix_seed(spec.seed, fnv1a64("ligand")), index));
    char name[32];
    std::snprintf(name, sizeof(name), "lig_%06zu", index);

    std::vector<Atom> atoms;
    atoms.reserve(n_atoms);
    std::vector<Bond> bonds;
    atoms.push_back({{0.0, 0.0, 0.0}, rng.uniform(0.6, 0.9)});
    for (std::size_t t = 1; t < n_atoms; ++t) {
      const std::size_t parent = rng.below(t);
      const Vec3 dir = random_unit_vector(rng);
      atoms.push_back({atoms[parent].position + 1.5 * dir, rng.uniform(0.6, 0.9)});
      bonds.emplace_back(parent, t);
    }

    // Every tree edge splits the molecule; pick distinct edges, parent side
    // fixed, child subtree moving.
    std::vector<std::size_t> edge_ids(bonds.size());
    for (std::size_t e = 0; e < bonds.size(); ++e) edge_ids[e] = e;
    for (std::size_t e = 0; e + 1 < edge_ids.size(); ++e) {
      const std::size_t swap_with = e + rng.below(edge_ids.size() - e);
      std::swap(edge_ids[e], edge_ids[swap_with]);
    }
    edge_ids.resize(std::min(n_rotamers, edge_ids.size()));
    std::sort(edge_ids.begin(), edge_ids.end());
    std::vector<Bond> rotamer_bonds;
    rotamer_bonds.reserve(edge_ids.size());
    for (std::size_t e : edge_ids) rotamer_bonds.push_back(bonds[e]);

    library.push_back(make_ligand(name, std::move(atoms), std::move(bonds),
                                  std::move(rotamer_bonds)));
  }
  return library;
}

}  // namespace geodock
