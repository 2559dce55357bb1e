#include "meshnav/state/rotation.hpp"

#include <cmath>

namespace meshnav::state {

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

Eigen::Matrix3d so3_exp(const Eigen::Vector3d& theta) {
  const double angle = theta.norm();
  const Eigen::Matrix3d k = skew(theta);
  if (angle < 1e-9) {
    return Eigen::Matrix3d::Identity() + k + 0.5 * k * k;
  }
  const double a = std::sin(angle) / angle;
  const double b = (1.0 - std::cos(angle)) / (angle * angle);
  return Eigen::Matrix3d::Identity() + a * k + b * k * k;
}

Eigen::Vector3d so3_log(const Eigen::Matrix3d& rot) {
  return UnitQuaternion::from_matrix(rot).log();
}

Eigen::Matrix3d so3_right_jacobian(const Eigen::Vector3d& theta) {
  const double angle = theta.norm();
  const Eigen::Matrix3d k = skew(theta);
  double c1;  // (1 - cos a) / a^2
  double c2;  // (a - sin a) / a^3
  if (angle < 1e-5) {
    const double a2 = angle * angle;
    c1 = 0.5 - a2 / 24.0;
    c2 = 1.0 / 6.0 - a2 / 120.0;
  } else {
    c1 = (1.0 - std::cos(angle)) / (angle * angle);
    c2 = (angle - std::sin(angle)) / (angle * angle * angle);
  }
  return Eigen::Matrix3d::Identity() - c1 * k + c2 * k * k;
}

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z)
    : q_(w, x, y, z) {
  q_.normalize();
}

UnitQuaternion::UnitQuaternion(const Eigen::Quaterniond& q) : q_(q) {
  q_.normalize();
}

UnitQuaternion UnitQuaternion::exp(const Eigen::Vector3d& theta) {
  const double angle = theta.norm();
  double scale;  // sin(a/2)/a
  double w;
  if (angle < 1e-8) {
    scale = 0.5 - angle * angle / 48.0;
    w = 1.0 - angle * angle / 8.0;
  } else {
    scale = std::sin(0.5 * angle) / angle;
    w = std::cos(0.5 * angle);
  }
  return UnitQuaternion(w, scale * theta.x(), scale * theta.y(),
                        scale * theta.z());
}

UnitQuaternion UnitQuaternion::from_matrix(const Eigen::Matrix3d& rot) {
  return UnitQuaternion(Eigen::Quaterniond(rot));
}

Eigen::Vector3d UnitQuaternion::log() const {
  Eigen::Quaterniond q = q_;
  if (q.w() < 0.0) {
    q.coeffs() = -q.coeffs();
  }
  const Eigen::Vector3d v = q.vec();
  const double vnorm = v.norm();
  if (vnorm < 1e-12) {
    return 2.0 * v;
  }
  const double angle = 2.0 * std::atan2(vnorm, q.w());
  return (angle / vnorm) * v;
}

UnitQuaternion UnitQuaternion::operator*(const UnitQuaternion& rhs) const {
  return UnitQuaternion(q_ * rhs.q_);
}

double UnitQuaternion::angular_distance(const UnitQuaternion& other) const {
  return q_.angularDistance(other.q_);
}

}  // namespace meshnav::state
