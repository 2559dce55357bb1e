#pragma once

#include "meshnav/calib/linear.hpp"
#include "meshnav/calib/types.hpp"

namespace meshnav::calib {

struct RefineOptions {
  double lambda_init{1e-3};
  double lambda_up{10.0};
  double lambda_down{0.1};
  double relative_cost_tol{1e-9};
  int max_iterations{100};
};

class DegenerateRefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Levenberg-Marquardt over x = [p, gamma per group, beta per group],
/// minimizing sum (z_i - (beta_g d_i(p) + gamma_g))^2. Betas start at 1.
/// Accepted-step costs are non-increasing; covariance at the solution is
/// sigma^2 (J^T J)^-1 with sigma^2 from the residual RMS. A run that hits
/// the iteration cap returns the best iterate with `converged` cleared.
CalibrationResult refine_nonlinear(const LinearSolution& initial,
                                   const CalibrationProblem& problem,
                                   const RefineOptions& options = {});

}  // namespace meshnav::calib
