#pragma once

#include <cstdint>

#include "meshnav/calib/refine.hpp"

namespace meshnav::calib {

struct RansacOptions {
  double expected_outlier_ratio{0.10};
  double success_probability{0.99};
  double sigma_range{0.1};     // sigma_d, m
  double sigma_position{0.0};  // sigma_p, m
  std::uint64_t seed{0};
  RefineOptions refine{};
};

class InsufficientInliersError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// RANSAC around the linear solve: each iteration draws a minimal sample set
/// (at least two per reference group when feasible), solves the linear
/// problem, and scores the model's squared residual over all samples. The
/// best model's inliers are the samples with |residual| <= sigma_d + sigma_p
/// (the 68% threshold); the final linear solve plus nonlinear refinement run
/// on that inlier set. Deterministic for a fixed seed.
CalibrationResult ransac_calibrate(const CalibrationProblem& problem,
                                   const RansacOptions& options);

// Number of draws for the given outlier ratio, success probability, and
// minimal sample size m.
int ransac_iterations(double expected_outlier_ratio, double success_probability,
                      int minimal_samples);

}  // namespace meshnav::calib
