#include "geodock/geometry.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "geodock/errors.hpp"
#include "geodock/prng.hpp"
#include "gtest/gtest.h"

using namespace geodock;

namespace {

Vec3 random_point(SplitMix64& rng, double extent = 5.0) {
  return {rng.uniform(-extent, extent), rng.uniform(-extent, extent),
          rng.uniform(-extent, extent)};
}

Vec3 random_unit(SplitMix64& rng) {
  while (true) {
    const Vec3 v = random_point(rng, 1.0);
    const double n = norm(v);
    if (n > 0.1 && n <= 1.0) return (1.0 / n) * v;
  }
}

Rotation random_rotation(SplitMix64& rng) {
  return Rotation::about_axis(random_unit(rng), rng.uniform(0.0, kTwoPi));
}

void expect_near_vec(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

}  // namespace

TEST(RotateAboutAxis, QuarterTurnAboutZ) {
  const auto out = rotate_about_axis({{1, 0, 0}}, {0, 0, 0}, {0, 0, 1}, kPi / 2.0);
  expect_near_vec(out[0], {0, 1, 0}, 1e-9);
}

TEST(RotateAboutAxis, ZeroAngleIsIdentity) {
  SplitMix64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Vec3 p = random_point(rng);
    const Vec3 axis = random_unit(rng);
    const auto out = rotate_about_axis({p}, random_point(rng), axis, 0.0);
    expect_near_vec(out[0], p, 1e-9);
  }
}

TEST(RotateAboutAxis, HalfTurnAboutZ) {
  const auto out = rotate_about_axis({{1, 1, 0}}, {0, 0, 0}, {0, 0, 1}, kPi);
  expect_near_vec(out[0], {-1, -1, 0}, 1e-9);
}

TEST(RotateAboutAxis, RejectsNonUnitAxis) {
  EXPECT_THROW(rotate_about_axis({{1, 0, 0}}, {0, 0, 0}, {0, 0, 2}, 1.0), ContractError);
  EXPECT_THROW(rotate_about_axis({{1, 0, 0}}, {0, 0, 0}, {0, 0, 0}, 1.0), ContractError);
}

TEST(RotateAboutAxis, PreservesDistanceToAxisAndPairwiseDistances) {
  SplitMix64 rng(12);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Vec3> points;
    for (int i = 0; i < 8; ++i) points.push_back(random_point(rng));
    const Vec3 origin = random_point(rng);
    const Vec3 axis = random_unit(rng);
    const double angle = rng.uniform(-kTwoPi, kTwoPi);
    const auto out = rotate_about_axis(points, origin, axis, angle);

    for (std::size_t i = 0; i < points.size(); ++i) {
      // Distance to the axis line is invariant.
      const Vec3 d_in = points[i] - origin;
      const Vec3 d_out = out[i] - origin;
      const double r_in = norm(d_in - dot(d_in, axis) * axis);
      const double r_out = norm(d_out - dot(d_out, axis) * axis);
      EXPECT_NEAR(r_in, r_out, 1e-9);
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        EXPECT_NEAR(distance(points[i], points[j]), distance(out[i], out[j]), 1e-9);
      }
    }
  }
}

TEST(RotateAboutAxis, ForwardThenBackwardRestores) {
  SplitMix64 rng(13);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Vec3> points;
    for (int i = 0; i < 6; ++i) points.push_back(random_point(rng));
    const Vec3 origin = random_point(rng);
    const Vec3 axis = random_unit(rng);
    const double angle = rng.uniform(0.0, kTwoPi);
    const auto forward = rotate_about_axis(points, origin, axis, angle);
    const auto back = rotate_about_axis(forward, origin, axis, -angle);
    for (std::size_t i = 0; i < points.size(); ++i) expect_near_vec(back[i], points[i], 1e-9);
  }
}

TEST(EnumerateRotations, SingleStepGridIsIdentity) {
  const RotationGrid grid = enumerate_rotations(1, 1, 1);
  ASSERT_EQ(grid.size(), 1u);
  EXPECT_EQ(grid[0].w, 1.0);
  EXPECT_EQ(grid[0].x, 0.0);
  EXPECT_EQ(grid[0].y, 0.0);
  EXPECT_EQ(grid[0].z, 0.0);
}

TEST(EnumerateRotations, CountsAndIdentityFirst) {
  const RotationGrid grid = enumerate_rotations(4, 4, 4);
  ASSERT_EQ(grid.size(), 64u);
  const Vec3 p{0.3, -1.2, 2.5};
  expect_near_vec(grid[0].apply(p), p, 1e-12);
}

TEST(EnumerateRotations, ZeroStepsRejected) {
  EXPECT_THROW(enumerate_rotations(0, 4, 4), ContractError);
  EXPECT_THROW(enumerate_rotations(4, 0, 4), ContractError);
  EXPECT_THROW(enumerate_rotations(4, 4, 0), ContractError);
}

TEST(EnumerateRotations, DefaultGridCoversManyDirections) {
  // Oracle: enumerate all 2048 rotations, bucket the images of (1,0,0) at
  // 1e-6 resolution, and count distinct directions.
  const RotationGrid grid = enumerate_rotations(16, 16, 8);
  ASSERT_EQ(grid.size(), 2048u);
  std::map<std::tuple<long long, long long, long long>, int> buckets;
  for (const Rotation& r : grid) {
    const Vec3 d = r.apply({1, 0, 0});
    buckets[{std::llround(d.x * 1e6), std::llround(d.y * 1e6), std::llround(d.z * 1e6)}]++;
  }
  EXPECT_GE(buckets.size(), 500u);
}

TEST(EnumerateRotations, Deterministic) {
  const RotationGrid a = enumerate_rotations(5, 3, 7);
  const RotationGrid b = enumerate_rotations(5, 3, 7);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].w, b[i].w);
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].y, b[i].y);
    EXPECT_EQ(a[i].z, b[i].z);
  }
}

TEST(ApplyRotationAboutCentroid, SinglePointUnchanged) {
  SplitMix64 rng(14);
  const Vec3 p = random_point(rng);
  const auto out = apply_rotation_about_centroid({p}, random_rotation(rng));
  expect_near_vec(out[0], p, 1e-12);
}

TEST(ApplyRotationAboutCentroid, SymmetricPairQuarterTurn) {
  const Rotation r = Rotation::about_axis({0, 0, 1}, kPi / 2.0);
  const auto out = apply_rotation_about_centroid({{1, 0, 0}, {-1, 0, 0}}, r);
  expect_near_vec(out[0], {0, 1, 0}, 1e-9);
  expect_near_vec(out[1], {0, -1, 0}, 1e-9);
}

TEST(ApplyRotationAboutCentroid, PreservesCentroidAndDistances) {
  SplitMix64 rng(15);
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<Vec3> points;
    for (int i = 0; i < 10; ++i) points.push_back(random_point(rng));
    const Rotation r = random_rotation(rng);
    const auto out = apply_rotation_about_centroid(points, r);
    expect_near_vec(centroid(points), centroid(out), 1e-9);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        EXPECT_NEAR(distance(points[i], points[j]), distance(out[i], out[j]), 1e-9);
      }
    }
  }
}

TEST(ApplyRotationAboutCentroid, EmptyInputRejected) {
  EXPECT_THROW(apply_rotation_about_centroid({}, Rotation::identity()), ContractError);
}

TEST(Rotation, InverseComposesToIdentity) {
  SplitMix64 rng(16);
  for (int i = 0; i < 30; ++i) {
    const Rotation r = random_rotation(rng);
    const Rotation id = r.compose(r.inverse());
    EXPECT_NEAR(std::abs(id.w), 1.0, 1e-9);
    EXPECT_NEAR(id.x, 0.0, 1e-9);
    EXPECT_NEAR(id.y, 0.0, 1e-9);
    EXPECT_NEAR(id.z, 0.0, 1e-9);
    EXPECT_NEAR(r.norm(), 1.0, 1e-9);
  }
}
