#pragma once

#include <Eigen/Core>

#include "meshnav/fusion/observation.hpp"
#include "meshnav/models/imu_model.hpp"

namespace meshnav::models {

/// Barometer constants. `reference_pressure` is the pressure at the height
/// datum (`reference_height` in the global frame), so predicted relative
/// height is (p_GI + R_GI p_IP)_z - reference_height.
struct BaroParams {
  Eigen::Vector3d lever_arm{Eigen::Vector3d::Zero()};  // p_IP, m
  double reference_pressure{101325.0};                 // Pa
  double reference_temperature{288.15};                // K
  double reference_height{0.0};                        // m
  double sigma_pressure{1.0};                          // Pa
};

// International barometric height formula relative to the reference.
double pressure_to_height(double pressure, const BaroParams& params);
double height_to_pressure(double height, const BaroParams& params);
// d height / d pressure at the given pressure (for noise mapping).
double height_pressure_derivative(double pressure, const BaroParams& params);

/// Height observation from a pressure reading (Pa). Residual is
/// h(z) - h_est; Jacobians w.r.t. the IMU error state:
/// dh/dp = e_z^T, dh/dtheta = -(e_z^T R skew(p_IP)).
fusion::LinearizedObservation baro_height_observation(
    const ImuState& imu, InstanceId imu_id, const BaroParams& params,
    double z_pressure);

}  // namespace meshnav::models
