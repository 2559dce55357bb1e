#pragma once

#include <Eigen/Core>

#include "meshnav/state/error_state.hpp"
#include "meshnav/state/rotation.hpp"

namespace meshnav::models {

inline const Eigen::Vector3d kGravity{0.0, 0.0, -9.81};

/// IMU mean state, error-state dimension 15:
/// [p_GI, v_GI, theta, b_gyro, b_accel].
struct ImuState {
  Eigen::Vector3d p_gi{Eigen::Vector3d::Zero()};
  Eigen::Vector3d v_gi{Eigen::Vector3d::Zero()};
  state::UnitQuaternion q_gi{};
  Eigen::Vector3d bias_gyro{Eigen::Vector3d::Zero()};
  Eigen::Vector3d bias_accel{Eigen::Vector3d::Zero()};

  static ImuState from_vector(const Eigen::VectorXd& mean);
  Eigen::VectorXd to_vector() const;
};

struct ImuReading {
  Eigen::Vector3d accel{Eigen::Vector3d::Zero()};  // specific force, m/s^2
  Eigen::Vector3d gyro{Eigen::Vector3d::Zero()};   // rad/s
  double t{0.0};

  bool finite() const {
    return accel.allFinite() && gyro.allFinite() && std::isfinite(t);
  }
};

// Continuous-time noise densities; discretized as sigma^2 * dt.
struct ImuNoise {
  double accel_density{0.0};      // m/s^2 / sqrt(Hz)
  double gyro_density{0.0};       // rad/s / sqrt(Hz)
  double accel_bias_walk{0.0};    // m/s^3 / sqrt(Hz)
  double gyro_bias_walk{0.0};     // rad/s^2 / sqrt(Hz)
};

struct ImuPropagation {
  ImuState state;
  Eigen::Matrix<double, 15, 15> covariance;
  Eigen::Matrix<double, 15, 15> phi;
};

/// One strapdown integration step (first order, exact quaternion increment):
///   q+ = q (x) exp((w# - b_w) dt)
///   v+ = v + (R(q)(a# - b_a) + g) dt
///   p+ = p + v dt + 1/2 (R(q)(a# - b_a) + g) dt^2
/// with biases random-walking. `phi` is the 15x15 error-state transition of
/// this discrete map under the right-multiplicative orientation error;
/// covariance+ = phi Sigma phi^T + Q(dt).
ImuPropagation imu_propagate(const ImuState& state,
                             const Eigen::Matrix<double, 15, 15>& covariance,
                             const ImuReading& reading, double dt,
                             const ImuNoise& noise,
                             const Eigen::Vector3d& gravity = kGravity);

Eigen::Matrix<double, 15, 15> imu_process_noise(const ImuNoise& noise,
                                                double dt);

}  // namespace meshnav::models
