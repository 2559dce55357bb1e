#pragma once

#include <Eigen/Core>

#include "meshnav/fusion/observation.hpp"
#include "meshnav/models/imu_model.hpp"

namespace meshnav::models {

struct ZuptNoise {
  double sigma_accel{0.05};  // m/s^2
  double sigma_gyro{0.005};  // rad/s
};

/// Zero-velocity pseudo observation built from the latest IMU reading at a
/// detected stand-still. The 6-dim measurement equation stacks
///   0 = a# - R^T g_z - b_a - nu_a
///   0 = w# - b_w - nu_w
/// so the Jacobians are d/dtheta = -skew(R^T g_z), d/db_a = d/db_w = -I.
///
/// `gravity_z` is the vector g_z appearing in the accelerometer equation: the
/// expected bias-free reading at rest is R^T g_z, so a specific-force IMU
/// (which reads -R^T g_world at rest) takes g_z = -g_world.
fusion::LinearizedObservation zupt_observation(const ImuState& imu,
                                               InstanceId imu_id,
                                               const ImuReading& latest,
                                               const Eigen::Vector3d& gravity_z,
                                               const ZuptNoise& noise);

}  // namespace meshnav::models
