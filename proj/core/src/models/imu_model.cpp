#include "meshnav/models/imu_model.hpp"

#include <cmath>

#include "meshnav/state/types.hpp"

namespace meshnav::models {

using state::skew;
using state::so3_exp;
using state::so3_right_jacobian;
using state::UnitQuaternion;

ImuState ImuState::from_vector(const Eigen::VectorXd& mean) {
  if (mean.size() != 16) {
    throw ContractError("imu mean must have 16 entries");
  }
  ImuState s;
  s.p_gi = mean.segment<3>(0);
  s.v_gi = mean.segment<3>(3);
  s.q_gi = UnitQuaternion(mean(6), mean(7), mean(8), mean(9));
  s.bias_gyro = mean.segment<3>(10);
  s.bias_accel = mean.segment<3>(13);
  return s;
}

Eigen::VectorXd ImuState::to_vector() const {
  Eigen::VectorXd mean(16);
  mean.segment<3>(0) = p_gi;
  mean.segment<3>(3) = v_gi;
  mean.segment<4>(6) = q_gi.coeffs_wxyz();
  mean.segment<3>(10) = bias_gyro;
  mean.segment<3>(13) = bias_accel;
  return mean;
}

Eigen::Matrix<double, 15, 15> imu_process_noise(const ImuNoise& noise,
                                                double dt) {
  Eigen::Matrix<double, 15, 15> q = Eigen::Matrix<double, 15, 15>::Zero();
  const Eigen::Matrix3d i3 = Eigen::Matrix3d::Identity();
  q.block<3, 3>(3, 3) = noise.accel_density * noise.accel_density * dt * i3;
  q.block<3, 3>(6, 6) = noise.gyro_density * noise.gyro_density * dt * i3;
  q.block<3, 3>(9, 9) = noise.gyro_bias_walk * noise.gyro_bias_walk * dt * i3;
  q.block<3, 3>(12, 12) =
      noise.accel_bias_walk * noise.accel_bias_walk * dt * i3;
  return q;
}

ImuPropagation imu_propagate(const ImuState& state,
                             const Eigen::Matrix<double, 15, 15>& covariance,
                             const ImuReading& reading, double dt,
                             const ImuNoise& noise,
                             const Eigen::Vector3d& gravity) {
  if (!(dt > 0.0) || dt > 0.1) {
    throw ContractError("imu_propagate: dt must lie in (0, 0.1] s");
  }
  if (!reading.finite()) {
    throw ContractError("imu_propagate: non-finite reading");
  }

  const Eigen::Vector3d w = reading.gyro - state.bias_gyro;
  const Eigen::Vector3d a = reading.accel - state.bias_accel;
  const Eigen::Matrix3d rot = state.q_gi.matrix();
  const Eigen::Vector3d acc_world = rot * a + gravity;

  ImuPropagation out;
  out.state = state;
  out.state.p_gi = state.p_gi + state.v_gi * dt + 0.5 * acc_world * dt * dt;
  out.state.v_gi = state.v_gi + acc_world * dt;
  out.state.q_gi = state.q_gi * UnitQuaternion::exp(w * dt);

  // Error order: [p, v, theta, b_gyro, b_accel].
  Eigen::Matrix<double, 15, 15>& phi = out.phi;
  phi.setIdentity();
  const Eigen::Matrix3d i3 = Eigen::Matrix3d::Identity();
  const Eigen::Matrix3d r_askew = rot * skew(a);
  phi.block<3, 3>(0, 3) = i3 * dt;
  phi.block<3, 3>(0, 6) = -0.5 * r_askew * dt * dt;
  phi.block<3, 3>(0, 12) = -0.5 * rot * dt * dt;
  phi.block<3, 3>(3, 6) = -r_askew * dt;
  phi.block<3, 3>(3, 12) = -rot * dt;
  phi.block<3, 3>(6, 6) = so3_exp(w * dt).transpose();
  phi.block<3, 3>(6, 9) = -so3_right_jacobian(w * dt) * dt;

  out.covariance = phi * covariance * phi.transpose() +
                   imu_process_noise(noise, dt);
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  return out;
}

}  // namespace meshnav::models
