#include "testkit/testkit.hpp"

#include "geodock/errors.hpp"
#include "geodock/generate.hpp"
#include "gtest/gtest.h"

using namespace geodock;

namespace {

Pocket uniform_pocket(double value, std::size_t n = 6) {
  Pocket p;
  p.origin = {0, 0, 0};
  p.spacing = 1.0;
  p.dims = {n, n, n};
  p.field.assign(n * n * n, value);
  return p;
}

}  // namespace

TEST(ReferenceDock, RefusesOversizedInstances) {
  SplitMix64 rng(71);
  const Pocket pocket = testkit::random_pocket(rng);
  const Ligand lig = testkit::random_ligand(rng, 6, 2);
  DockParams params;
  params.n_restarts = 64;
  params.rotation_steps = {16, 16, 8};  // 64 * 2048 > 1e5
  EXPECT_THROW(testkit::reference_dock(lig, pocket, params), testkit::OracleGuardError);
}

TEST(ReferenceDock, IdentityGridScoreEqualsGeneratedStart) {
  SplitMix64 rng(72);
  const Pocket pocket = testkit::random_pocket(rng);
  LibrarySpec spec;
  spec.count = 1;
  spec.atoms = 5;
  spec.rotamers = 0;
  spec.seed = 9;
  const Ligand lig = make_library(spec)[0];
  DockParams params;
  params.n_restarts = 1;
  params.rotation_steps = {1, 1, 1};
  const DockResult r = testkit::reference_dock(lig, pocket, params);
  const Ligand start = generate_starting_pose(lig, 0, params, pocket);
  // Identity-rotation alignment re-centres about the centroid; score equals
  // the start pose's score up to that no-op transform.
  EXPECT_NEAR(r.best_score, score_pose(start, pocket), 1e-12);
  EXPECT_EQ(r.score_calls, 1u);
}

TEST(BruteForceBestRotation, IdentityOnlyGrid) {
  SplitMix64 rng(73);
  const Pocket pocket = testkit::random_pocket(rng);
  const Ligand lig = testkit::random_ligand(rng, 6, 2);
  const RotationGrid grid = enumerate_rotations(1, 1, 1);
  const auto [index, score] = testkit::brute_force_best_rotation(lig, pocket, grid);
  EXPECT_EQ(index, 0u);
  EXPECT_NEAR(score, score_pose(lig, pocket), 1e-12);
}

TEST(BruteForceBestRotation, UniformFieldTieBreaksToZero) {
  const Pocket pocket = uniform_pocket(0.375, 12);
  Ligand lig = make_ligand("pair", {{{5, 5, 5}, 0.4}, {{6.5, 5, 5}, 0.4}}, {{0, 1}}, {});
  const RotationGrid grid = enumerate_rotations(4, 4, 4);
  const auto [index, score] = testkit::brute_force_best_rotation(lig, pocket, grid);
  EXPECT_EQ(index, 0u);
  EXPECT_EQ(score, 0.375);
}

TEST(BruteForceBestDihedral, SingleStepKeepsCurrent) {
  SplitMix64 rng(74);
  const Pocket pocket = testkit::random_pocket(rng);
  Ligand lig;
  while (true) {
    lig = testkit::random_ligand(rng, 8, 3);
    if (!lig.rotamers.empty() && bump_check(lig, 0.75)) break;
  }
  const auto best = testkit::brute_force_best_dihedral(lig, 0, pocket, 1, 0.75);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->first, 0u);
  EXPECT_NEAR(best->second, score_pose(lig, pocket), 1e-12);
}

TEST(BruteForceBestDihedral, GuardRejectsHugeStepCounts) {
  SplitMix64 rng(75);
  const Pocket pocket = testkit::random_pocket(rng);
  Ligand lig;
  while (true) {
    lig = testkit::random_ligand(rng, 8, 3);
    if (!lig.rotamers.empty()) break;
  }
  EXPECT_THROW(testkit::brute_force_best_dihedral(lig, 0, pocket, 20000, 0.75),
               testkit::OracleGuardError);
}

TEST(ThroughputBounds, HybridFormula) {
  NodeConfig c;
  c.n_workers = 7;
  c.n_devices = 1;
  c.mode = ExecMode::synthetic;
  c.t_align_device = 1.0;
  c.t_opt_cpu = 6.0;
  EXPECT_DOUBLE_EQ(testkit::hybrid_throughput_bound(c), 1.0);
  c.n_workers = 3;
  EXPECT_DOUBLE_EQ(testkit::hybrid_throughput_bound(c), 3.0 / 7.0);
  c.n_workers = 16;
  c.n_devices = 4;
  EXPECT_DOUBLE_EQ(testkit::hybrid_throughput_bound(c), 16.0 / 7.0);
  c.n_workers = 4;
  c.n_devices = 0;
  c.t_align_cpu = 16.0;
  EXPECT_DOUBLE_EQ(testkit::hybrid_throughput_bound(c), 4.0 / 22.0);
}

TEST(ThroughputBounds, SplitFormula) {
  NodeConfig c;
  c.n_workers = 16;
  c.n_devices = 1;
  c.mode = ExecMode::synthetic;
  c.t_align_device = 1.0;
  c.t_opt_device = 3.0;
  c.t_align_cpu = 16.0;
  c.t_opt_cpu = 6.0;
  EXPECT_DOUBLE_EQ(testkit::split_throughput_bound(c), 1.0 / 4.0 + 15.0 / 22.0);
}
