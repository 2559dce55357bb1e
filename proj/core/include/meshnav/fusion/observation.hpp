#pragma once

#include <Eigen/Core>
#include <vector>

#include "meshnav/state/types.hpp"

namespace meshnav::fusion {

/// Linearized measurement: residual r = z - h(x_hat), noise R, and one
/// Jacobian block H_i = dh/d(error_i) per involved instance.
struct LinearizedObservation {
  struct JacobianBlock {
    InstanceId instance_id;
    Eigen::MatrixXd jacobian;  // residual_dim x error_dim(instance)
  };

  Eigen::VectorXd residual;
  Eigen::MatrixXd noise;
  std::vector<JacobianBlock> blocks;

  int residual_dim() const { return static_cast<int>(residual.size()); }
  const Eigen::MatrixXd* block_for(InstanceId id) const;
  void check_consistent() const;
};

}  // namespace meshnav::fusion
