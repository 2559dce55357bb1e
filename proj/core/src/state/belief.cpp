#include "meshnav/state/belief.hpp"

#include <Eigen/Eigenvalues>
#include <utility>

namespace meshnav::state {

Belief::Belief(InstanceId id, double t, Eigen::VectorXd m, Eigen::MatrixXd cov)
    : instance_id(id),
      timestamp(t),
      mean(std::move(m)),
      covariance(std::move(cov)) {
  if (instance_id <= 0) {
    throw ContractError("instance id must be a positive integer");
  }
  if (covariance.rows() != covariance.cols()) {
    throw ContractError("covariance must be square");
  }
  symmetrize();
}

void Belief::symmetrize() {
  if (covariance.size() > 0) {
    covariance = symmetrized(covariance);
  }
}

double Belief::min_eigenvalue() const {
  if (covariance.size() == 0) {
    return 0.0;
  }
  return state::min_eigenvalue(covariance);
}

bool Belief::covariance_psd(double tol) const {
  if (covariance.size() == 0) {
    return true;
  }
  if (!covariance.allFinite()) {
    return false;
  }
  return min_eigenvalue() >= -tol;
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  return solver.eigenvalues().minCoeff();
}

}  // namespace meshnav::state
