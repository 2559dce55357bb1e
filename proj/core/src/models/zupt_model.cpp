#include "meshnav/models/zupt_model.hpp"

#include "meshnav/state/rotation.hpp"
#include "meshnav/state/types.hpp"

namespace meshnav::models {

fusion::LinearizedObservation zupt_observation(const ImuState& imu,
                                               InstanceId imu_id,
                                               const ImuReading& latest,
                                               const Eigen::Vector3d& gravity_z,
                                               const ZuptNoise& noise) {
  if (!latest.finite()) {
    throw ContractError("zupt_observation: non-finite IMU reading");
  }
  const Eigen::Matrix3d rot = imu.q_gi.matrix();
  const Eigen::Vector3d rtg = rot.transpose() * gravity_z;

  const Eigen::Vector3d h_accel = latest.accel - rtg - imu.bias_accel;
  const Eigen::Vector3d h_gyro = latest.gyro - imu.bias_gyro;

  fusion::LinearizedObservation obs;
  obs.residual = Eigen::VectorXd(6);
  obs.residual.segment<3>(0) = -h_accel;
  obs.residual.segment<3>(3) = -h_gyro;

  obs.noise = Eigen::MatrixXd::Zero(6, 6);
  obs.noise.block<3, 3>(0, 0) =
      noise.sigma_accel * noise.sigma_accel * Eigen::Matrix3d::Identity();
  obs.noise.block<3, 3>(3, 3) =
      noise.sigma_gyro * noise.sigma_gyro * Eigen::Matrix3d::Identity();

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(6, 15);
  jac.block<3, 3>(0, 6) = -state::skew(rtg);
  jac.block<3, 3>(0, 12) = -Eigen::Matrix3d::Identity();
  jac.block<3, 3>(3, 9) = -Eigen::Matrix3d::Identity();
  obs.blocks.push_back({imu_id, std::move(jac)});
  return obs;
}

}  // namespace meshnav::models
