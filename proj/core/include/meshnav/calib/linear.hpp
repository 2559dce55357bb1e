#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "meshnav/calib/types.hpp"

namespace meshnav::calib {

class UnobservableGeometryError : public std::runtime_error {
 public:
  UnobservableGeometryError(std::string what, Eigen::VectorXd null_direction)
      : std::runtime_error(std::move(what)),
        null_direction(std::move(null_direction)) {}
  Eigen::VectorXd null_direction;
};

/// Greedy disjoint pairing per reference group: repeatedly take the two
/// not-yet-used samples with the largest reference-position separation (a
/// row-conditioning proxy), ties broken toward earlier timestamps. Groups
/// with fewer than two samples are skipped.
std::vector<std::pair<int, int>> select_optimal_pairs(
    const CalibrationProblem& problem);

struct LinearSolveInfo {
  double condition_number{0.0};
  double smallest_singular_value{0.0};
  int rows{0};
};

struct LinearSolution {
  Eigen::Vector3d position;
  std::map<InstanceId, double> gamma;
  LinearSolveInfo info;
};

/// Difference-of-squared-ranges least squares (beta fixed to 1): each pair
/// within a group contributes the row
///   -2 (p1 - p2)^T p + 2 (z1 - z2) gamma_g = z1^2 - z2^2 - |p1|^2 + |p2|^2.
/// Unknowns are [p; gamma per group]. Throws UnobservableGeometryError when
/// the stacked system is rank deficient (smallest singular value below
/// 1e-6 x largest), with the null-space direction attached.
LinearSolution solve_linear(const CalibrationProblem& problem);

// As above but restricted to the given pair set (used by RANSAC draws).
LinearSolution solve_linear_with_pairs(
    const CalibrationProblem& problem,
    const std::vector<std::pair<int, int>>& pairs);

}  // namespace meshnav::calib
