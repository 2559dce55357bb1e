#pragma once

#include <Eigen/Core>

#include "meshnav/state/types.hpp"

namespace meshnav::state {

/// Per-instance state estimate: mean vector (instance-type-specific layout)
/// and covariance over the instance's error state. The covariance is
/// symmetrized after every write; stateless instances use dimension zero.
struct Belief {
  InstanceId instance_id{0};
  double timestamp{0.0};
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  Belief() = default;
  Belief(InstanceId id, double t, Eigen::VectorXd m, Eigen::MatrixXd cov);

  void symmetrize();
  double min_eigenvalue() const;
  // Symmetric PSD within tolerance (eigenvalues >= -tol).
  bool covariance_psd(double tol = 1e-10) const;
};

// 0.5 (M + M^T); idempotent.
Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m);

double min_eigenvalue(const Eigen::MatrixXd& symmetric);

}  // namespace meshnav::state
