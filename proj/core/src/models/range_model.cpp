#include "meshnav/models/range_model.hpp"

#include "meshnav/state/rotation.hpp"
#include "meshnav/state/types.hpp"

namespace meshnav::models {

std::pair<InstanceId, InstanceId> RangeBiasTable::key(InstanceId a,
                                                      InstanceId b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void RangeBiasTable::set(InstanceId a, InstanceId b, PairBias bias) {
  if (a == b) {
    throw ContractError("pair bias requires two distinct devices");
  }
  if (!(bias.beta > 0.0)) {
    throw ContractError("beta must be positive");
  }
  table_[key(a, b)] = bias;
}

std::optional<PairBias> RangeBiasTable::get(InstanceId a, InstanceId b) const {
  auto it = table_.find(key(a, b));
  if (it == table_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<fusion::LinearizedObservation> range_observation_tag_anchor(
    const ImuState& imu, InstanceId imu_id, const Eigen::Vector3d& tag_lever,
    const Eigen::Vector3d& anchor_position, InstanceId anchor_id,
    const PairBias& bias, double z, double sigma_d, double d_min) {
  const Eigen::Matrix3d rot = imu.q_gi.matrix();
  const Eigen::Vector3d p_tag = imu.p_gi + rot * tag_lever;
  const Eigen::Vector3d diff = anchor_position - p_tag;
  const double d = diff.norm();
  if (d < d_min) {
    return std::nullopt;
  }
  const Eigen::RowVector3d u = (diff / d).transpose();

  fusion::LinearizedObservation obs;
  obs.residual = Eigen::VectorXd::Constant(1, z - (bias.beta * d + bias.gamma));
  obs.noise = Eigen::MatrixXd::Constant(1, 1, sigma_d * sigma_d);

  Eigen::MatrixXd jac_imu = Eigen::MatrixXd::Zero(1, 15);
  jac_imu.block<1, 3>(0, 0) = -bias.beta * u;
  jac_imu.block<1, 3>(0, 6) = bias.beta * u * rot * state::skew(tag_lever);
  obs.blocks.push_back({imu_id, std::move(jac_imu)});

  Eigen::MatrixXd jac_anchor = (bias.beta * u).eval();
  obs.blocks.push_back({anchor_id, std::move(jac_anchor)});
  return obs;
}

std::optional<fusion::LinearizedObservation> range_observation_anchor_anchor(
    const Eigen::Vector3d& p_i, InstanceId id_i, const Eigen::Vector3d& p_j,
    InstanceId id_j, const PairBias& bias, double z, double sigma_d,
    double d_min) {
  const Eigen::Vector3d diff = p_j - p_i;
  const double d = diff.norm();
  if (d < d_min) {
    return std::nullopt;
  }
  const Eigen::RowVector3d u = (diff / d).transpose();

  fusion::LinearizedObservation obs;
  obs.residual = Eigen::VectorXd::Constant(1, z - (bias.beta * d + bias.gamma));
  obs.noise = Eigen::MatrixXd::Constant(1, 1, sigma_d * sigma_d);
  obs.blocks.push_back({id_i, (-bias.beta * u).eval()});
  obs.blocks.push_back({id_j, (bias.beta * u).eval()});
  return obs;
}

}  // namespace meshnav::models
