#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "meshnav/state/types.hpp"

namespace meshnav::calib {

/// One range collected toward the unknown anchor: the reference device's
/// position (tag from estimator or truth, or a known anchor), the measured
/// range, and the 1-sigma uncertainties of both.
struct CalibrationSample {
  double t{0.0};
  InstanceId reference_id{0};
  Eigen::Vector3d reference_position{Eigen::Vector3d::Zero()};
  double range{0.0};
  double sigma_position{0.0};
  double sigma_range{0.0};
};

/// Stacked samples for a single unknown anchor, grouped by reference device.
struct CalibrationProblem {
  InstanceId anchor_id{0};
  std::vector<CalibrationSample> samples;
  int min_samples_per_group{2};

  std::map<InstanceId, std::vector<int>> groups() const;
  // Reference ids with at least min_samples_per_group samples, ascending.
  std::vector<InstanceId> group_ids() const;
};

/// Calibrated unknowns [p_GAx, gamma per reference, beta per reference] with
/// covariance, the RANSAC inlier mask (all-true without RANSAC), and the
/// residual RMS at the solution.
struct CalibrationResult {
  InstanceId anchor_id{0};
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};
  std::map<InstanceId, double> gamma;
  std::map<InstanceId, double> beta;
  Eigen::MatrixXd covariance;  // over [p, gamma..., beta...] in group order
  std::vector<bool> inlier_mask;
  double residual_rms{0.0};
  bool converged{true};

  Eigen::Matrix3d position_covariance() const {
    return covariance.topLeftCorner<3, 3>();
  }
};

}  // namespace meshnav::calib
