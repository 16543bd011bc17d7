#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geodock/geometry.hpp"
#include "geodock/molecule.hpp"
#include "geodock/scoring.hpp"

namespace geodock {

struct DockParams {
  unsigned n_restarts = 32;                      // independent greedy searches
  unsigned num_repetitions = 3;                  // optimization passes per restart
  std::array<unsigned, 3> rotation_steps{16, 16, 8};
  unsigned dihedral_steps = 36;                  // candidates per rotamer, >= 2
  double clash_factor = 0.75;
  std::uint64_t seed = 0;
};

/// Per-phase cost at the profiled per-call budget of 100 ns per scoring
/// call. Derived from the deterministic call counters, never from a wall
/// clock, so every DockResult field is a pure function of its inputs.
inline constexpr double kNominalSecondsPerScoreCall = 1e-7;

struct PhaseTimes {
  double align_seconds = 0.0;
  double optimize_seconds = 0.0;
};

struct DockResult {
  std::string ligand_name;
  Score best_score = 0.0;
  unsigned best_restart_id = 0;
  std::vector<Vec3> final_coordinates;
  std::vector<double> final_dihedrals;
  std::uint64_t score_calls = 0;
  PhaseTimes phase_times;  // nominal, counter-derived
};

/// Optional instrumentation filled by dock_ligand for the profiler.
/// Wall times here are measured and therefore not deterministic.
struct DockStats {
  std::uint64_t align_score_calls = 0;
  std::uint64_t optimize_score_calls = 0;
  std::uint64_t bump_checks = 0;
  std::uint64_t fragment_rotations = 0;
  double align_wall_seconds = 0.0;
  double optimize_wall_seconds = 0.0;

  DockStats& operator+=(const DockStats& o);
};

/// Closed-form scoring-call count:
///   n_restarts * (grid size + num_repetitions * n_rotamers * dihedral_steps).
/// dock_ligand's recorded counter must equal this exactly.
std::uint64_t count_score_calls(const DockParams& params, std::size_t n_rotamers);

/// Deterministic function of (seed, pose_id, ligand name): a pseudo-random
/// orientation about the centroid plus a pseudo-random centroid position
/// inside the pocket bounding box.
Ligand generate_starting_pose(const Ligand& ligand, unsigned pose_id, const DockParams& params,
                              const Pocket& pocket);

/// Result of the fused rotate-and-score sweep over a rotation index range.
/// `evaluated` records how many rotations were actually scored; combine()
/// sums it, so the final choice carries the exact scoring-call count.
struct RotationChoice {
  std::size_t index = static_cast<std::size_t>(-1);
  Score score = -1.0;  // below any real score; real scores are in [0, 1]
  std::uint64_t evaluated = 0;

  bool valid() const { return index != static_cast<std::size_t>(-1); }
};

/// Scores the ligand under every grid rotation in [lo, hi) about its
/// centroid without materializing any rotated pose, and returns the best
/// (highest score, then lowest index). Associative building block: combining
/// chunk results reproduces the full-range result bit-exactly.
RotationChoice best_rotation_in_range(const Ligand& posed, const Pocket& pocket,
                                      const RotationGrid& grid, std::size_t lo, std::size_t hi);

/// Lexicographic (max score, min index) merge of two chunk results.
RotationChoice combine(const RotationChoice& a, const RotationChoice& b);

/// Applies the winning rotation once and forwards its score.
std::pair<Ligand, Score> apply_rotation_choice(const Ligand& posed, const RotationGrid& grid,
                                               const RotationChoice& choice);

/// Exhaustive rigid alignment: fused sweep plus argmax reduction.
std::pair<Ligand, Score> align_ligand(const Ligand& ligand, const Pocket& pocket,
                                      const RotationGrid& grid);

/// Outcome of evaluating the dihedral candidates of one rotamer.
struct DihedralStep {
  bool committed = false;   // false: every candidate failed the bump check
  unsigned k = 0;           // winning candidate index
  Score score = 0.0;        // winning score (meaningful when committed)
  Ligand pose;              // committed pose (meaningful when committed)
};

/// Evaluates the dihedral_steps candidate angles k*2pi/S of one rotamer,
/// relative to the current dihedral. Every candidate is scored and
/// bump-checked; the best eligible one wins, ties to the lowest k.
DihedralStep dihedral_step(const Ligand& current, std::size_t rotamer_index, const Pocket& pocket,
                           unsigned dihedral_steps, double clash_factor,
                           DockStats* stats = nullptr);

/// One optimization pass: each rotamer in index order, strictly sequential,
/// committing before the next. Standalone call; computes the return score
/// itself when the ligand has no rotamers.
std::pair<Ligand, Score> optimize_pose(const Ligand& ligand, const Pocket& pocket,
                                       const DockParams& params);

/// The aligned pose of a single restart, its score, and the number of
/// scoring calls spent aligning it.
struct AlignedRestart {
  Ligand pose;
  Score score = 0.0;
  std::uint64_t score_calls = 0;
};

/// generate_starting_pose + align for every restart, serially. The lane
/// offload path reproduces this bit-exactly from the chunked pieces above.
std::vector<AlignedRestart> align_restarts(const Ligand& ligand, const Pocket& pocket,
                                           const DockParams& params, const RotationGrid& grid,
                                           DockStats* stats = nullptr);

/// Optimization passes over pre-aligned restarts, best-of-restarts selection
/// (ties to the lowest restart id), and exact call accounting.
DockResult finish_dock(const Ligand& ligand, const std::vector<AlignedRestart>& aligned,
                       const Pocket& pocket, const DockParams& params,
                       DockStats* stats = nullptr);

/// Full multi-restart greedy dock of one ligand. Pure given its arguments;
/// safe to call from any number of workers against one shared Pocket.
DockResult dock_ligand(const Ligand& ligand, const Pocket& pocket, const DockParams& params,
                       DockStats* stats = nullptr);

}  // namespace geodock
