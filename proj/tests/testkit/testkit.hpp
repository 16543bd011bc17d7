#pragma once

// Independent oracles, coded from the documented behavior rather than by
// delegating to the main-path helpers: naive materialized-pose docking,
// brute-force argmax searches, and closed-form throughput bounds. Test-only;
// never linked into the user-facing binary.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geodock/docking.hpp"
#include "geodock/molecule.hpp"
#include "geodock/pipeline.hpp"
#include "geodock/prng.hpp"
#include "geodock/scoring.hpp"

namespace geodock::testkit {

/// The oracles are deliberately slow; refuse instances past the guard.
class OracleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Comparison record for one oracle-vs-main-path check.
struct OracleReport {
  std::string instance;
  double main_value = 0.0;
  double oracle_value = 0.0;
  double max_deviation = 0.0;
  bool pass = false;
};

/// Direct transcription of the original restart loop with materialized
/// intermediate poses. Must equal dock_ligand bit for bit.
/// Guard: n_restarts * grid size <= 1e5 scoring calls in the alignment phase.
DockResult reference_dock(const Ligand& ligand, const Pocket& pocket, const DockParams& params);

/// Separately coded rotate-then-score argmax over the whole grid
/// (lowest index wins ties). Guard: grid size <= 1e4.
std::pair<std::size_t, Score> brute_force_best_rotation(const Ligand& ligand,
                                                        const Pocket& pocket,
                                                        const RotationGrid& grid);

/// Independent enumeration of the dihedral candidates of one rotamer with
/// the eligibility and tie-break rules. nullopt means "keep the current
/// dihedral" (every candidate failed the bump check). Guard: steps <= 1e4.
std::optional<std::pair<unsigned, Score>> brute_force_best_dihedral(const Ligand& ligand,
                                                                    std::size_t rotamer_index,
                                                                    const Pocket& pocket,
                                                                    unsigned dihedral_steps,
                                                                    double clash_factor);

/// Steady-state throughput bound of the hybrid schedule: per lane,
/// min(workers_on_lane / (t_align + t_opt), 1 / t_align); summed over lanes.
/// Workers are spread by worker id mod device count.
double hybrid_throughput_bound(const NodeConfig& config);

/// Throughput bound of the naive split baseline.
double split_throughput_bound(const NodeConfig& config);

/// Small random tree-shaped ligand for property tests.
Ligand random_ligand(SplitMix64& rng, std::size_t max_atoms, std::size_t max_rotamers);

/// Small random pocket with a smooth, non-uniform field.
Pocket random_pocket(SplitMix64& rng);

}  // namespace geodock::testkit
