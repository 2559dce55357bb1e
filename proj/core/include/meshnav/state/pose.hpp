#pragma once

#include <Eigen/Core>

#include "meshnav/state/rotation.hpp"

namespace meshnav::state {

// Rigid transform: position in meters plus a unit-quaternion orientation.
struct Pose {
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};
  UnitQuaternion orientation{};

  bool finite() const {
    return position.allFinite() && orientation.coeffs_wxyz().allFinite();
  }

  // Point expressed in this pose's body frame, mapped to the parent frame.
  Eigen::Vector3d transform(const Eigen::Vector3d& body_point) const {
    return position + orientation.rotate(body_point);
  }
};

}  // namespace meshnav::state
