#include "meshnav/fusion/observation.hpp"

namespace meshnav::fusion {

const Eigen::MatrixXd* LinearizedObservation::block_for(InstanceId id) const {
  for (const JacobianBlock& b : blocks) {
    if (b.instance_id == id) {
      return &b.jacobian;
    }
  }
  return nullptr;
}

void LinearizedObservation::check_consistent() const {
  const int m = residual_dim();
  if (noise.rows() != m || noise.cols() != m) {
    throw ContractError("observation noise dimension mismatch");
  }
  for (const JacobianBlock& b : blocks) {
    if (b.jacobian.rows() != m) {
      throw ContractError("observation jacobian row dimension mismatch");
    }
  }
}

}  // namespace meshnav::fusion
