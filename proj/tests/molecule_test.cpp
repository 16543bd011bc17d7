#include "geodock/molecule.hpp"

#include <cmath>

#include "geodock/errors.hpp"
#include "geodock/prng.hpp"
#include "gtest/gtest.h"
#include "testkit/testkit.hpp"

using namespace geodock;

namespace {

/// Chain 0-1-2-3 along x, atom 3 offset in y so fragment turns are visible.
Ligand chain_ligand() {
  std::vector<Atom> atoms{{{0, 0, 0}, 0.5},
                          {{1.5, 0, 0}, 0.5},
                          {{3.0, 0, 0}, 0.5},
                          {{4.0, 1.0, 0}, 0.5}};
  return make_ligand("chain", std::move(atoms), {{0, 1}, {1, 2}, {2, 3}}, {{1, 2}});
}

std::vector<double> bond_lengths(const Ligand& lig) {
  std::vector<double> out;
  for (const Bond& b : lig.bonds) {
    out.push_back(distance(lig.atoms[b.first].position, lig.atoms[b.second].position));
  }
  return out;
}

}  // namespace

TEST(FragmentPartition, PathGraphMiddleBond) {
  std::vector<Atom> atoms(4, Atom{{0, 0, 0}, 1.0});
  for (int i = 0; i < 4; ++i) atoms[i].position.x = i * 1.5;
  const Ligand lig = make_ligand("path", std::move(atoms), {{0, 1}, {1, 2}, {2, 3}}, {{1, 2}});
  const auto [moving, fixed] = fragment_partition(lig, 0);
  EXPECT_EQ(moving, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(fixed, (std::vector<std::size_t>{0, 1}));
}

TEST(FragmentPartition, PathGraphFirstBond) {
  std::vector<Atom> atoms(3, Atom{{0, 0, 0}, 1.0});
  for (int i = 0; i < 3; ++i) atoms[i].position.x = i * 1.5;
  const Ligand lig = make_ligand("path3", std::move(atoms), {{0, 1}, {1, 2}}, {{0, 1}});
  const auto [moving, fixed] = fragment_partition(lig, 0);
  EXPECT_EQ(moving, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(fixed, (std::vector<std::size_t>{0}));
}

TEST(FragmentPartition, StarGraphLeafBond) {
  std::vector<Atom> atoms(5, Atom{{0, 0, 0}, 1.0});
  for (int i = 1; i < 5; ++i) atoms[i].position = {1.5 * i, 1.0, 0.0};
  const Ligand lig =
      make_ligand("star", std::move(atoms), {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {{0, 1}});
  const auto [moving, fixed] = fragment_partition(lig, 0);
  EXPECT_EQ(moving, (std::vector<std::size_t>{1}));
  EXPECT_EQ(fixed, (std::vector<std::size_t>{0, 2, 3, 4}));
}

TEST(FragmentPartition, MovingAndFixedPartitionAllAtoms) {
  SplitMix64 rng(21);
  for (int iter = 0; iter < 40; ++iter) {
    const Ligand lig = testkit::random_ligand(rng, 12, 6);
    for (std::size_t r = 0; r < lig.rotamers.size(); ++r) {
      const auto [moving, fixed] = fragment_partition(lig, r);
      EXPECT_EQ(moving.size() + fixed.size(), lig.atoms.size());
      for (std::size_t m : moving) {
        EXPECT_EQ(std::find(fixed.begin(), fixed.end(), m), fixed.end());
      }
      // The fixed side owns atom_i, the moving side owns atom_j.
      const Rotamer& rot = lig.rotamers[r];
      EXPECT_NE(std::find(moving.begin(), moving.end(), rot.atom_j), moving.end());
      EXPECT_NE(std::find(fixed.begin(), fixed.end(), rot.atom_i), fixed.end());
    }
  }
}

TEST(FragmentPartition, RingBondRejected) {
  // Triangle 0-1-2 plus a tail; the ring bond cannot be a rotamer.
  std::vector<Atom> atoms(4, Atom{{0, 0, 0}, 1.0});
  atoms[1].position = {1.5, 0, 0};
  atoms[2].position = {0.75, 1.3, 0};
  atoms[3].position = {3.0, 0, 0};
  Ligand lig;
  lig.name = "ringy";
  lig.atoms = atoms;
  lig.bonds = {{0, 1}, {1, 2}, {2, 0}, {1, 3}};
  lig.rotamers = {{0, 1, {}}};
  lig.dihedrals = {0.0};
  EXPECT_THROW(fragment_partition(lig, 0), InvalidRotamerError);
  const auto violations = validate_ligand(lig);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].find("does not disconnect graph"), std::string::npos);
}

TEST(RotateFragment, ZeroAngleBitIdentical) {
  const Ligand lig = chain_ligand();
  const Ligand out = rotate_fragment(lig, 0, 0.0);
  EXPECT_TRUE(same_pose(lig, out));
}

TEST(RotateFragment, HalfTurnFlipsOffsetAtom) {
  const Ligand lig = chain_ligand();
  const Ligand out = rotate_fragment(lig, 0, kPi);
  // Atoms 0,1,2 sit on or before the axis; only atom 3 moves, reflecting
  // its y offset through the bond axis (the x axis).
  for (int a = 0; a < 3; ++a) {
    EXPECT_TRUE(lig.atoms[a].position == out.atoms[a].position);
  }
  EXPECT_NEAR(out.atoms[3].position.x, 4.0, 1e-9);
  EXPECT_NEAR(out.atoms[3].position.y, -1.0, 1e-9);
  EXPECT_NEAR(out.atoms[3].position.z, 0.0, 1e-9);
}

TEST(RotateFragment, PreservesBondLengthsAndFixedAtoms) {
  SplitMix64 rng(22);
  for (int iter = 0; iter < 60; ++iter) {
    const Ligand lig = testkit::random_ligand(rng, 8, 4);
    if (lig.rotamers.empty()) continue;
    const std::size_t r = rng.below(lig.rotamers.size());
    const double angle = rng.uniform(-kTwoPi, kTwoPi);
    const Ligand out = rotate_fragment(lig, r, angle);

    const auto before = bond_lengths(lig);
    const auto after = bond_lengths(out);
    for (std::size_t b = 0; b < before.size(); ++b) EXPECT_NEAR(before[b], after[b], 1e-9);

    const auto [moving, fixed] = fragment_partition(lig, r);
    for (std::size_t f : fixed) {
      EXPECT_TRUE(lig.atoms[f].position == out.atoms[f].position);
    }
    // Axis atoms are bitwise untouched even though atom_j is in the moving set.
    const Rotamer& rot = lig.rotamers[r];
    EXPECT_TRUE(lig.atoms[rot.atom_i].position == out.atoms[rot.atom_i].position);
    EXPECT_TRUE(lig.atoms[rot.atom_j].position == out.atoms[rot.atom_j].position);
  }
}

TEST(RotateFragment, ForwardBackwardRestoresCoordinates) {
  SplitMix64 rng(23);
  for (int iter = 0; iter < 40; ++iter) {
    const Ligand lig = testkit::random_ligand(rng, 8, 4);
    if (lig.rotamers.empty()) continue;
    const std::size_t r = rng.below(lig.rotamers.size());
    const double angle = rng.uniform(0.0, kTwoPi);
    const Ligand back = rotate_fragment(rotate_fragment(lig, r, angle), r, -angle);
    for (std::size_t a = 0; a < lig.atoms.size(); ++a) {
      EXPECT_NEAR(lig.atoms[a].position.x, back.atoms[a].position.x, 1e-9);
      EXPECT_NEAR(lig.atoms[a].position.y, back.atoms[a].position.y, 1e-9);
      EXPECT_NEAR(lig.atoms[a].position.z, back.atoms[a].position.z, 1e-9);
    }
  }
}

TEST(RotateFragment, TracksDihedralState) {
  const Ligand lig = chain_ligand();
  const Ligand once = rotate_fragment(lig, 0, kPi / 2.0);
  EXPECT_NEAR(once.dihedrals[0], kPi / 2.0, 1e-12);
  const Ligand twice = rotate_fragment(once, 0, kPi);
  EXPECT_NEAR(twice.dihedrals[0], 1.5 * kPi, 1e-12);
  const Ligand wrapped = rotate_fragment(twice, 0, kPi);
  EXPECT_NEAR(wrapped.dihedrals[0], 0.5 * kPi, 1e-12);
}

TEST(RotateFragment, DegenerateAxisRejected) {
  std::vector<Atom> atoms{{{0, 0, 0}, 0.5}, {{0, 0, 0}, 0.5}, {{1.5, 0, 0}, 0.5}};
  Ligand lig;
  lig.name = "degen";
  lig.atoms = std::move(atoms);
  lig.bonds = {{0, 1}, {1, 2}};
  lig.rotamers = {{0, 1, {1, 2}}};
  lig.dihedrals = {0.0};
  EXPECT_THROW(rotate_fragment(lig, 0, 1.0), DegenerateAxisError);
}

TEST(ValidateLigand, WellFormedChainIsClean) {
  EXPECT_TRUE(validate_ligand(chain_ligand()).empty());
}

TEST(ValidateLigand, BondIndexOutOfRange) {
  Ligand lig;
  lig.name = "oob";
  lig.atoms = {{{0, 0, 0}, 1.0}, {{1.5, 0, 0}, 1.0}};
  lig.bonds = {{0, 5}};
  const auto violations = validate_ligand(lig);
  ASSERT_FALSE(violations.empty());
  EXPECT_NE(violations[0].find("bond index out of range"), std::string::npos);
}

TEST(ValidateLigand, ReportsEveryViolation) {
  Ligand lig;
  lig.name = "multi";
  lig.atoms = {{{0, 0, 0}, -1.0}, {{1.5, 0, 0}, 1.0}, {{3.0, 0, 0}, 1.0}};
  lig.bonds = {{0, 1}};  // disconnected: atom 2 unreachable
  lig.dihedrals = {0.0};  // no rotamers -> length mismatch
  const auto violations = validate_ligand(lig);
  EXPECT_GE(violations.size(), 3u);  // radius, connectivity, dihedral count
}

TEST(ValidateLigand, DisconnectedGraphReported) {
  Ligand lig;
  lig.name = "split";
  lig.atoms = {{{0, 0, 0}, 1.0}, {{1.5, 0, 0}, 1.0}, {{9, 9, 9}, 1.0}, {{10.5, 9, 9}, 1.0}};
  lig.bonds = {{0, 1}, {2, 3}};
  const auto violations = validate_ligand(lig);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].find("not connected"), std::string::npos);
}

TEST(MakeLigand, RotamerCountLimitEnforced) {
  // A long chain with every bond rotatable exceeds the config limit.
  const std::size_t n = kMaxRotamers + 2;
  std::vector<Atom> atoms(n, Atom{{0, 0, 0}, 0.4});
  for (std::size_t i = 0; i < n; ++i) atoms[i].position = {1.5 * static_cast<double>(i), 0, 0};
  std::vector<Bond> bonds;
  for (std::size_t i = 0; i + 1 < n; ++i) bonds.emplace_back(i, i + 1);
  EXPECT_THROW(make_ligand("huge", std::move(atoms), bonds, bonds), ValidationError);
}
