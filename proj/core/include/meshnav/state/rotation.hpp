#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace meshnav::state {

Eigen::Matrix3d skew(const Eigen::Vector3d& v);

// SO(3) exponential of a rotation vector.
Eigen::Matrix3d so3_exp(const Eigen::Vector3d& theta);

// Rotation vector of a rotation matrix (principal branch).
Eigen::Vector3d so3_log(const Eigen::Matrix3d& rot);

// Right Jacobian of SO(3): Exp(theta + d) ~= Exp(theta) * Exp(Jr(theta) d).
Eigen::Matrix3d so3_right_jacobian(const Eigen::Vector3d& theta);

/// Unit-norm quaternion (w, x, y, z). Renormalizes after every operation so
/// that |q| stays within 1e-9 of one through long composition chains.
class UnitQuaternion {
 public:
  UnitQuaternion() : q_(1.0, 0.0, 0.0, 0.0) {}
  UnitQuaternion(double w, double x, double y, double z);
  explicit UnitQuaternion(const Eigen::Quaterniond& q);

  static UnitQuaternion identity() { return UnitQuaternion(); }
  // Quaternion exponential of a rotation vector.
  static UnitQuaternion exp(const Eigen::Vector3d& theta);
  static UnitQuaternion from_matrix(const Eigen::Matrix3d& rot);

  // Rotation vector of this quaternion (shortest branch, |log| <= pi).
  Eigen::Vector3d log() const;
  Eigen::Matrix3d matrix() const { return q_.toRotationMatrix(); }
  UnitQuaternion conjugate() const { return UnitQuaternion(q_.conjugate()); }
  UnitQuaternion operator*(const UnitQuaternion& rhs) const;
  Eigen::Vector3d rotate(const Eigen::Vector3d& v) const { return q_ * v; }

  double w() const { return q_.w(); }
  double x() const { return q_.x(); }
  double y() const { return q_.y(); }
  double z() const { return q_.z(); }
  Eigen::Vector4d coeffs_wxyz() const {
    return Eigen::Vector4d(q_.w(), q_.x(), q_.y(), q_.z());
  }
  const Eigen::Quaterniond& eigen() const { return q_; }

  // Angular distance, sign-insensitive (q and -q are the same rotation).
  double angular_distance(const UnitQuaternion& other) const;

 private:
  Eigen::Quaterniond q_;
};

}  // namespace meshnav::state
