#include "geodock/docking.hpp"

#include <chrono>
#include <cmath>

#include "geodock/errors.hpp"
#include "geodock/prng.hpp"

namespace geodock {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rotation random_rotation(SplitMix64& rng) {
  // Shoemake's uniform quaternion from three uniforms.
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double u3 = rng.uniform();
  const double r1 = std::sqrt(1.0 - u1);
  const double r2 = std::sqrt(u1);
  Rotation q{r2 * std::cos(kTwoPi * u3), r1 * std::sin(kTwoPi * u2), r1 * std::cos(kTwoPi * u2),
             r2 * std::sin(kTwoPi * u3)};
  const double n = q.norm();
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

}  // namespace

DockStats& DockStats::operator+=(const DockStats& o) {
  align_score_calls += o.align_score_calls;
  optimize_score_calls += o.optimize_score_calls;
  bump_checks += o.bump_checks;
  fragment_rotations += o.fragment_rotations;
  align_wall_seconds += o.align_wall_seconds;
  optimize_wall_seconds += o.optimize_wall_seconds;
  return *this;
}

std::uint64_t count_score_calls(const DockParams& params, std::size_t n_rotamers) {
  const std::uint64_t grid = static_cast<std::uint64_t>(params.rotation_steps[0]) *
                             params.rotation_steps[1] * params.rotation_steps[2];
  return static_cast<std::uint64_t>(params.n_restarts) *
         (grid + static_cast<std::uint64_t>(params.num_repetitions) * n_rotamers *
                     params.dihedral_steps);
}

Ligand generate_starting_pose(const Ligand& ligand, unsigned pose_id, const DockParams& params,
                              const Pocket& pocket) {
  // Independent stream per (seed, pose_id, ligand): restarts never share
  // generator state, so they can run in any order on any worker.
  SplitMix64 rng(mix_seed(mix_seed(params.seed, fnv1a64(ligand.name)), pose_id));
  const Rotation r = random_rotation(rng);
  const Vec3 lo = pocket.bounds_lo();
  const Vec3 hi = pocket.bounds_hi();
  const Vec3 target{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y), rng.uniform(lo.z, hi.z)};

  const std::vector<Vec3> points = ligand.positions();
  const Vec3 c = centroid(points);
  Ligand out = ligand;
  for (std::size_t a = 0; a < points.size(); ++a) {
    out.atoms[a].position = r.apply(points[a] - c) + target;
  }
  return out;
}

RotationChoice best_rotation_in_range(const Ligand& posed, const Pocket& pocket,
                                      const RotationGrid& grid, std::size_t lo, std::size_t hi) {
  if (posed.atoms.empty()) throw ContractError("cannot align a ligand with no atoms");
  RotationChoice best;
  const std::vector<Vec3> points = posed.positions();
  const Vec3 c = centroid(points);
  for (std::size_t g = lo; g < hi; ++g) {
    const Rotation& r = grid[g];
    double sum = 0.0;
    for (const Vec3& p : points) {
      sum += sample_field(pocket, rotated_about(p, c, r));
    }
    const Score s = sum / static_cast<double>(points.size());
    if (s > best.score || !best.valid()) {
      best.index = g;
      best.score = s;
    }
    ++best.evaluated;
  }
  return best;
}

RotationChoice combine(const RotationChoice& a, const RotationChoice& b) {
  RotationChoice out;
  if (!a.valid()) {
    out = b;
  } else if (!b.valid()) {
    out = a;
  } else if (b.score > a.score) {
    out = b;
  } else if (a.score > b.score) {
    out = a;
  } else {
    out = a.index <= b.index ? a : b;
  }
  out.evaluated = a.evaluated + b.evaluated;
  return out;
}

std::pair<Ligand, Score> apply_rotation_choice(const Ligand& posed, const RotationGrid& grid,
                                               const RotationChoice& choice) {
  if (!choice.valid()) throw ContractError("no rotation was evaluated");
  const std::vector<Vec3> rotated = apply_rotation_about_centroid(posed.positions(),
                                                                  grid[choice.index]);
  Ligand out = posed;
  for (std::size_t a = 0; a < rotated.size(); ++a) out.atoms[a].position = rotated[a];
  return {std::move(out), choice.score};
}

std::pair<Ligand, Score> align_ligand(const Ligand& ligand, const Pocket& pocket,
                                      const RotationGrid& grid) {
  if (grid.size() == 0) throw ContractError("rotation grid is empty");
  const RotationChoice choice = best_rotation_in_range(ligand, pocket, grid, 0, grid.size());
  return apply_rotation_choice(ligand, grid, choice);
}

DihedralStep dihedral_step(const Ligand& current, std::size_t rotamer_index, const Pocket& pocket,
                           unsigned dihedral_steps, double clash_factor, DockStats* stats) {
  const double delta = kTwoPi / static_cast<double>(dihedral_steps);
  DihedralStep best;
  for (unsigned k = 0; k < dihedral_steps; ++k) {
    Ligand candidate =
        k == 0 ? current : rotate_fragment(current, rotamer_index, delta * static_cast<double>(k));
    const Score s = score_pose(candidate, pocket);
    const bool eligible = bump_check(candidate, clash_factor);
    if (stats) {
      ++stats->optimize_score_calls;
      ++stats->bump_checks;
      if (k > 0) ++stats->fragment_rotations;
    }
    if (eligible && (!best.committed || s > best.score)) {
      best.committed = true;
      best.k = k;
      best.score = s;
      best.pose = std::move(candidate);
    }
  }
  return best;
}

namespace {

/// One full pass over the rotamers. `incoming_score` is returned untouched
/// when no rotamer commits (all candidates clash everywhere).
std::pair<Ligand, Score> optimize_pass(Ligand current, Score incoming_score, const Pocket& pocket,
                                       const DockParams& params, DockStats* stats) {
  Score score = incoming_score;
  for (std::size_t r = 0; r < current.rotamers.size(); ++r) {
    DihedralStep step =
        dihedral_step(current, r, pocket, params.dihedral_steps, params.clash_factor, stats);
    if (step.committed) {
      current = std::move(step.pose);
      score = step.score;
    }
  }
  return {std::move(current), score};
}

}  // namespace

std::pair<Ligand, Score> optimize_pose(const Ligand& ligand, const Pocket& pocket,
                                       const DockParams& params) {
  const Score initial = score_pose(ligand, pocket);
  if (ligand.rotamers.empty()) return {ligand, initial};
  return optimize_pass(ligand, initial, pocket, params, nullptr);
}

std::vector<AlignedRestart> align_restarts(const Ligand& ligand, const Pocket& pocket,
                                           const DockParams& params, const RotationGrid& grid,
                                           DockStats* stats) {
  const auto t0 = Clock::now();
  std::vector<AlignedRestart> out;
  out.reserve(params.n_restarts);
  for (unsigned pose_id = 0; pose_id < params.n_restarts; ++pose_id) {
    const Ligand start = generate_starting_pose(ligand, pose_id, params, pocket);
    const RotationChoice choice = best_rotation_in_range(start, pocket, grid, 0, grid.size());
    auto [pose, score] = apply_rotation_choice(start, grid, choice);
    out.push_back({std::move(pose), score, choice.evaluated});
  }
  if (stats) {
    for (const AlignedRestart& r : out) stats->align_score_calls += r.score_calls;
    stats->align_wall_seconds += seconds_since(t0);
  }
  return out;
}

DockResult finish_dock(const Ligand& ligand, const std::vector<AlignedRestart>& aligned,
                       const Pocket& pocket, const DockParams& params, DockStats* stats) {
  const auto t0 = Clock::now();
  DockResult result;
  result.ligand_name = ligand.name;
  bool have_best = false;
  Ligand best_pose;
  DockStats counters;  // recorded, not recomputed: the accounting tests bite

  std::uint64_t align_calls = 0;
  for (unsigned pose_id = 0; pose_id < aligned.size(); ++pose_id) {
    align_calls += aligned[pose_id].score_calls;
    Ligand pose = aligned[pose_id].pose;
    Score score = aligned[pose_id].score;
    for (unsigned rep = 0; rep < params.num_repetitions; ++rep) {
      auto [next, next_score] = optimize_pass(std::move(pose), score, pocket, params, &counters);
      pose = std::move(next);
      score = next_score;
    }
    if (!have_best || score > result.best_score) {
      have_best = true;
      result.best_score = score;
      result.best_restart_id = pose_id;
      best_pose = std::move(pose);
    }
  }

  result.final_coordinates = best_pose.positions();
  result.final_dihedrals = best_pose.dihedrals;
  result.score_calls = align_calls + counters.optimize_score_calls;
  result.phase_times.align_seconds = static_cast<double>(align_calls) * kNominalSecondsPerScoreCall;
  result.phase_times.optimize_seconds =
      static_cast<double>(counters.optimize_score_calls) * kNominalSecondsPerScoreCall;
  if (stats) {
    counters.optimize_wall_seconds = seconds_since(t0);
    *stats += counters;
  }
  return result;
}

DockResult dock_ligand(const Ligand& ligand, const Pocket& pocket, const DockParams& params,
                       DockStats* stats) {
  const std::vector<std::string> violations = validate_ligand(ligand);
  if (!violations.empty()) throw ValidationError(ligand.name, violations);
  const RotationGrid grid = enumerate_rotations(params.rotation_steps);
  const std::vector<AlignedRestart> aligned = align_restarts(ligand, pocket, params, grid, stats);
  return finish_dock(ligand, aligned, pocket, params, stats);
}

}  // namespace geodock
