#include "meshnav/calib/refine.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

namespace meshnav::calib {

namespace {

struct ModelIndex {
  std::vector<InstanceId> group_order;
  std::map<InstanceId, int> group_slot;
  std::vector<int> used_samples;
  int dim() const { return 3 + 2 * static_cast<int>(group_order.size()); }
};

ModelIndex build_index(const CalibrationProblem& problem,
                       const LinearSolution& initial) {
  ModelIndex idx;
  for (const auto& [ref, g] : initial.gamma) {
    idx.group_slot.emplace(ref, static_cast<int>(idx.group_order.size()));
    idx.group_order.push_back(ref);
  }
  for (int i = 0; i < static_cast<int>(problem.samples.size()); ++i) {
    if (idx.group_slot.count(problem.samples[i].reference_id) > 0) {
      idx.used_samples.push_back(i);
    }
  }
  return idx;
}

Eigen::VectorXd residuals(const CalibrationProblem& problem,
                          const ModelIndex& idx, const Eigen::VectorXd& x) {
  const Eigen::Vector3d p = x.head<3>();
  const int g = static_cast<int>(idx.group_order.size());
  Eigen::VectorXd r(idx.used_samples.size());
  for (std::size_t k = 0; k < idx.used_samples.size(); ++k) {
    const CalibrationSample& s = problem.samples[idx.used_samples[k]];
    const int slot = idx.group_slot.at(s.reference_id);
    const double d = (p - s.reference_position).norm();
    const double gamma = x(3 + slot);
    const double beta = x(3 + g + slot);
    r(k) = s.range - (beta * d + gamma);
  }
  return r;
}

Eigen::MatrixXd model_jacobian(const CalibrationProblem& problem,
                               const ModelIndex& idx,
                               const Eigen::VectorXd& x) {
  const Eigen::Vector3d p = x.head<3>();
  const int g = static_cast<int>(idx.group_order.size());
  Eigen::MatrixXd jac =
      Eigen::MatrixXd::Zero(idx.used_samples.size(), idx.dim());
  for (std::size_t k = 0; k < idx.used_samples.size(); ++k) {
    const CalibrationSample& s = problem.samples[idx.used_samples[k]];
    const int slot = idx.group_slot.at(s.reference_id);
    const Eigen::Vector3d diff = p - s.reference_position;
    const double d = std::max(diff.norm(), 1e-12);
    const double beta = x(3 + g + slot);
    jac.block<1, 3>(k, 0) = beta * (diff / d).transpose();
    jac(k, 3 + slot) = 1.0;
    jac(k, 3 + g + slot) = d;
  }
  return jac;
}

}  // namespace

CalibrationResult refine_nonlinear(const LinearSolution& initial,
                                   const CalibrationProblem& problem,
                                   const RefineOptions& options) {
  const ModelIndex idx = build_index(problem, initial);
  const int g = static_cast<int>(idx.group_order.size());
  const int dim = idx.dim();
  if (static_cast<int>(idx.used_samples.size()) < dim) {
    throw ContractError("refine_nonlinear needs at least dim(x) samples");
  }

  Eigen::VectorXd x(dim);
  x.head<3>() = initial.position;
  for (const auto& [ref, gamma] : initial.gamma) {
    x(3 + idx.group_slot.at(ref)) = gamma;
  }
  x.segment(3 + g, g).setOnes();  // betas start at 1
  if (!x.allFinite()) {
    throw ContractError("refine_nonlinear: non-finite initial guess");
  }

  double lambda = options.lambda_init;
  Eigen::VectorXd r = residuals(problem, idx, x);
  double cost = 0.5 * r.squaredNorm();
  bool converged = false;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::MatrixXd jac = model_jacobian(problem, idx, x);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd damped = jtj;
      for (int i = 0; i < dim; ++i) {
        damped(i, i) += lambda * std::max(jtj(i, i), 1e-12);
      }
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(damped);
      if (ldlt.info() != Eigen::Success) {
        throw DegenerateRefinementError("degenerate refinement: singular normal equations");
      }
      const Eigen::VectorXd step = ldlt.solve(jtr);
      const Eigen::VectorXd x_try = x + step;
      // Keep the distance scales physical; a step onto beta <= 0 is rejected.
      const bool beta_ok = (x_try.segment(3 + g, g).array() > 0.0).all();
      const Eigen::VectorXd r_try = residuals(problem, idx, x_try);
      const double cost_try = 0.5 * r_try.squaredNorm();
      if (beta_ok && cost_try <= cost) {
        const double relative_decrease =
            cost > 0.0 ? (cost - cost_try) / cost : 0.0;
        x = x_try;
        r = r_try;
        cost = cost_try;
        lambda = std::max(lambda * options.lambda_down, 1e-12);
        accepted = true;
        if (relative_decrease < options.relative_cost_tol) {
          converged = true;
        }
      } else {
        lambda *= options.lambda_up;
        if (lambda > 1e12) {
          // No acceptable step remains at any damping; treat as converged
          // to the current iterate.
          converged = true;
          accepted = true;
        }
      }
    }
    if (converged) {
      break;
    }
  }

  CalibrationResult result;
  result.anchor_id = problem.anchor_id;
  result.position = x.head<3>();
  for (int s = 0; s < g; ++s) {
    result.gamma[idx.group_order[s]] = x(3 + s);
    result.beta[idx.group_order[s]] = x(3 + g + s);
  }
  result.converged = converged;
  result.inlier_mask.assign(problem.samples.size(), true);

  const int n = static_cast<int>(idx.used_samples.size());
  result.residual_rms = std::sqrt(r.squaredNorm() / n);
  const double sigma2 =
      n > dim ? r.squaredNorm() / static_cast<double>(n - dim) : 0.0;
  const Eigen::MatrixXd jac = model_jacobian(problem, idx, x);
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  if (!lu.isInvertible()) {
    throw DegenerateRefinementError("degenerate refinement: J^T J is singular");
  }
  result.covariance = sigma2 * lu.inverse();
  return result;
}

}  // namespace meshnav::calib
