#include "geodock/geometry.hpp"

#include <cmath>

#include "geodock/errors.hpp"

namespace geodock {

Rotation Rotation::from_euler_zyz(double alpha, double beta, double gamma) {
  const Rotation qz_alpha = about_axis({0.0, 0.0, 1.0}, alpha);
  const Rotation qy_beta = about_axis({0.0, 1.0, 0.0}, beta);
  const Rotation qz_gamma = about_axis({0.0, 0.0, 1.0}, gamma);
  return qz_alpha.compose(qy_beta).compose(qz_gamma);
}

RotationGrid::RotationGrid(unsigned steps_alpha, unsigned steps_beta, unsigned steps_gamma)
    : steps_alpha_(steps_alpha), steps_beta_(steps_beta), steps_gamma_(steps_gamma) {
  if (steps_alpha == 0 || steps_beta == 0 || steps_gamma == 0) {
    throw ContractError("rotation grid steps must all be >= 1");
  }
  rotations_.reserve(static_cast<std::size_t>(steps_alpha) * steps_beta * steps_gamma);
  // alpha, gamma sampled on [0, 2pi); beta on the closed interval [0, pi].
  for (unsigned i = 0; i < steps_alpha; ++i) {
    const double alpha = kTwoPi * static_cast<double>(i) / static_cast<double>(steps_alpha);
    for (unsigned j = 0; j < steps_beta; ++j) {
      const double beta =
          steps_beta == 1 ? 0.0 : kPi * static_cast<double>(j) / static_cast<double>(steps_beta - 1);
      for (unsigned k = 0; k < steps_gamma; ++k) {
        const double gamma = kTwoPi * static_cast<double>(k) / static_cast<double>(steps_gamma);
        rotations_.push_back(Rotation::from_euler_zyz(alpha, beta, gamma));
      }
    }
  }
}

RotationGrid enumerate_rotations(unsigned steps_alpha, unsigned steps_beta, unsigned steps_gamma) {
  return RotationGrid(steps_alpha, steps_beta, steps_gamma);
}

Vec3 centroid(const std::vector<Vec3>& points) {
  if (points.empty()) throw ContractError("centroid of an empty point set");
  Vec3 sum;
  for (const Vec3& p : points) sum = sum + p;
  const double inv = 1.0 / static_cast<double>(points.size());
  return inv * sum;
}

std::vector<Vec3> rotate_about_axis(const std::vector<Vec3>& points, const Vec3& origin,
                                    const Vec3& axis, double angle) {
  if (std::abs(norm(axis) - 1.0) > kGeomTol) {
    throw ContractError("rotation axis must have unit norm");
  }
  const Rotation r = Rotation::about_axis(axis, angle);
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const Vec3& p : points) out.push_back(rotated_about(p, origin, r));
  return out;
}

std::vector<Vec3> apply_rotation_about_centroid(const std::vector<Vec3>& points,
                                                const Rotation& r) {
  if (points.empty()) throw ContractError("cannot rotate an empty point set about its centroid");
  const Vec3 c = centroid(points);
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const Vec3& p : points) out.push_back(rotated_about(p, c, r));
  return out;
}

}  // namespace geodock
