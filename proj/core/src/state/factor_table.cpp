#include "meshnav/state/factor_table.hpp"

namespace meshnav::state {

Eigen::MatrixXd reconstruct_cross(const Eigen::MatrixXd& s_ij,
                                  const Eigen::MatrixXd& s_ji) {
  if (s_ij.cols() != s_ji.cols()) {
    throw ContractError("reconstruct_cross: inner factor dimensions disagree");
  }
  return s_ij * s_ji.transpose();
}

void FactorTable::push(InstanceId other, double t, Eigen::MatrixXd factor) {
  auto it = entries_.find(other);
  if (it == entries_.end()) {
    it = entries_
             .emplace(other, SlidingHistory<Eigen::MatrixXd>(max_entries_,
                                                             max_age_))
             .first;
  }
  it->second.insert(t, std::move(factor));
}

const Eigen::MatrixXd& FactorTable::at_or_before(InstanceId other,
                                                 double t) const {
  auto it = entries_.find(other);
  if (it == entries_.end()) {
    throw HistoryError("factor table has no entry for requested instance");
  }
  return it->second.query(t);
}

const Eigen::MatrixXd& FactorTable::latest(InstanceId other) const {
  auto it = entries_.find(other);
  if (it == entries_.end()) {
    throw HistoryError("factor table has no entry for requested instance");
  }
  return it->second.latest();
}

void FactorTable::truncate_after(double t) {
  for (auto& [id, hist] : entries_) {
    hist.truncate_after(t);
  }
}

bool FactorTable::entry_empty(InstanceId other) const {
  auto it = entries_.find(other);
  return it == entries_.end() || it->second.empty();
}

}  // namespace meshnav::state
