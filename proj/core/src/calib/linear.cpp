#include "meshnav/calib/linear.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace meshnav::calib {

std::map<InstanceId, std::vector<int>> CalibrationProblem::groups() const {
  std::map<InstanceId, std::vector<int>> by_reference;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    by_reference[samples[i].reference_id].push_back(i);
  }
  return by_reference;
}

std::vector<InstanceId> CalibrationProblem::group_ids() const {
  std::vector<InstanceId> ids;
  for (const auto& [id, members] : groups()) {
    if (static_cast<int>(members.size()) >= std::max(min_samples_per_group, 2)) {
      ids.push_back(id);
    }
  }
  return ids;
}

std::vector<std::pair<int, int>> select_optimal_pairs(
    const CalibrationProblem& problem) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [ref_id, members] : problem.groups()) {
    if (members.size() < 2) {
      continue;
    }
    std::vector<int> remaining = members;
    while (remaining.size() >= 2) {
      double best = -1.0;
      std::size_t bi = 0;
      std::size_t bj = 1;
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        for (std::size_t j = i + 1; j < remaining.size(); ++j) {
          const double sep = (problem.samples[remaining[i]].reference_position -
                              problem.samples[remaining[j]].reference_position)
                                 .norm();
          if (sep > best) {
            best = sep;
            bi = i;
            bj = j;
          }
        }
      }
      int first = remaining[bi];
      int second = remaining[bj];
      if (problem.samples[second].t < problem.samples[first].t) {
        std::swap(first, second);
      }
      pairs.emplace_back(first, second);
      remaining.erase(remaining.begin() + bj);
      remaining.erase(remaining.begin() + bi);
    }
  }
  return pairs;
}

LinearSolution solve_linear_with_pairs(
    const CalibrationProblem& problem,
    const std::vector<std::pair<int, int>>& pairs) {
  // Column order: [p (3), gamma per group id ascending].
  std::map<InstanceId, int> gamma_column;
  for (const auto& [i1, i2] : pairs) {
    const InstanceId ref = problem.samples[i1].reference_id;
    if (problem.samples[i2].reference_id != ref) {
      throw ContractError("pair spans two reference groups");
    }
    gamma_column.emplace(ref, 0);
  }
  int col = 3;
  for (auto& [ref, column] : gamma_column) {
    column = col++;
  }
  const int cols = col;
  const int rows = static_cast<int>(pairs.size());
  if (rows < cols) {
    throw ContractError("linear anchor solve needs at least 3 + G rows");
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b(rows);
  for (int r = 0; r < rows; ++r) {
    const CalibrationSample& s1 = problem.samples[pairs[r].first];
    const CalibrationSample& s2 = problem.samples[pairs[r].second];
    a.block<1, 3>(r, 0) =
        -2.0 * (s1.reference_position - s2.reference_position).transpose();
    a(r, gamma_column.at(s1.reference_id)) = 2.0 * (s1.range - s2.range);
    b(r) = s1.range * s1.range - s2.range * s2.range -
           s1.reference_position.squaredNorm() +
           s2.reference_position.squaredNorm();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  LinearSolution out;
  out.info.rows = rows;
  out.info.smallest_singular_value = sv(sv.size() - 1);
  out.info.condition_number =
      sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                              : std::numeric_limits<double>::infinity();
  if (out.info.smallest_singular_value <= 1e-6 * sv(0)) {
    throw UnobservableGeometryError("unobservable geometry in linear anchor solve",
                                    svd.matrixV().col(sv.size() - 1));
  }
  const Eigen::VectorXd x = svd.solve(b);
  out.position = x.head<3>();
  for (const auto& [ref, column] : gamma_column) {
    out.gamma[ref] = x(column);
  }
  return out;
}

LinearSolution solve_linear(const CalibrationProblem& problem) {
  return solve_linear_with_pairs(problem, select_optimal_pairs(problem));
}

}  // namespace meshnav::calib
