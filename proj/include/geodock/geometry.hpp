#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace geodock {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance for the rigid-body contracts (unit axes, isometry checks).
/// Comfortably above double accumulation error for molecule-sized point sets.
inline constexpr double kGeomTol = 1e-9;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline bool operator==(const Vec3& a, const Vec3& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z;
}
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

/// Rigid orientation as a unit quaternion.
struct Rotation {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Rotation identity() { return {}; }

  /// Rotation by `angle` radians about a unit axis.
  static Rotation about_axis(const Vec3& axis, double angle) {
    const double half = 0.5 * angle;
    const double s = std::sin(half);
    return {std::cos(half), axis.x * s, axis.y * s, axis.z * s};
  }

  /// Euler ZYZ: rotate by gamma about z, then beta about y, then alpha about z.
  static Rotation from_euler_zyz(double alpha, double beta, double gamma);

  /// this ∘ other: apply `other` first, then this.
  Rotation compose(const Rotation& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  Rotation inverse() const { return {w, -x, -y, -z}; }

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  Vec3 apply(const Vec3& v) const {
    // v' = v + 2w (q × v) + 2 q × (q × v), the standard quaternion sandwich.
    // This is the single rotation formula used everywhere in the project so
    // that every code path produces bit-identical coordinates.
    const Vec3 q{x, y, z};
    const Vec3 t = 2.0 * cross(q, v);
    return v + w * t + cross(q, t);
  }
};

/// Deterministic enumeration of steps_alpha × steps_beta × steps_gamma Euler
/// ZYZ orientations; index 0 is always the identity.
class RotationGrid {
 public:
  RotationGrid(unsigned steps_alpha, unsigned steps_beta, unsigned steps_gamma);
  explicit RotationGrid(const std::array<unsigned, 3>& steps)
      : RotationGrid(steps[0], steps[1], steps[2]) {}

  std::size_t size() const { return rotations_.size(); }
  const Rotation& operator[](std::size_t i) const { return rotations_[i]; }
  std::array<unsigned, 3> steps() const { return {steps_alpha_, steps_beta_, steps_gamma_}; }

  auto begin() const { return rotations_.begin(); }
  auto end() const { return rotations_.end(); }

 private:
  unsigned steps_alpha_;
  unsigned steps_beta_;
  unsigned steps_gamma_;
  std::vector<Rotation> rotations_;
};

/// R(p - center) + center. Shared by every rotation path, fused or not.
inline Vec3 rotated_about(const Vec3& p, const Vec3& center, const Rotation& r) {
  return r.apply(p - center) + center;
}

/// Mean of the points, accumulated in index order.
Vec3 centroid(const std::vector<Vec3>& points);

/// Rotates every point about the line through `origin` with direction `axis`.
/// The axis must have unit norm (within 1e-9).
std::vector<Vec3> rotate_about_axis(const std::vector<Vec3>& points, const Vec3& origin,
                                    const Vec3& axis, double angle);

RotationGrid enumerate_rotations(unsigned steps_alpha, unsigned steps_beta, unsigned steps_gamma);
inline RotationGrid enumerate_rotations(const std::array<unsigned, 3>& steps) {
  return RotationGrid(steps);
}

/// Rotates the point set about its own centroid.
std::vector<Vec3> apply_rotation_about_centroid(const std::vector<Vec3>& points,
                                                const Rotation& r);

}  // namespace geodock
