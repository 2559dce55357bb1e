#pragma once

#include <Eigen/Core>
#include <map>

#include "meshnav/state/history.hpp"
#include "meshnav/state/types.hpp"

namespace meshnav::state {

// Sigma_ij = S_ij * S_ji^T for factors stored on the two instances.
Eigen::MatrixXd reconstruct_cross(const Eigen::MatrixXd& s_ij,
                                  const Eigen::MatrixXd& s_ji);

/// Per-instance store of factorized cross-covariances: for every other
/// instance j a timestamped history of this side's factor S_{owner,j}.
///
/// Canonical form after an exact re-factorization of pair (i, j), i < j:
/// the lower id holds the full cross block (dim_i x dim_j), the higher id
/// holds the identity (dim_j x dim_j); the shared inner dimension is dim_j.
class FactorTable {
 public:
  FactorTable() = default;
  explicit FactorTable(InstanceId owner, std::size_t max_entries = 0,
                       double max_age = 0.0)
      : owner_(owner), max_entries_(max_entries), max_age_(max_age) {}

  InstanceId owner() const { return owner_; }

  bool has(InstanceId other) const { return entries_.count(other) > 0; }

  void push(InstanceId other, double t, Eigen::MatrixXd factor);

  // Factor with the greatest timestamp <= t; throws if none.
  const Eigen::MatrixXd& at_or_before(InstanceId other, double t) const;
  const Eigen::MatrixXd& latest(InstanceId other) const;

  void erase(InstanceId other) { entries_.erase(other); }
  void truncate_after(double t);
  // True when the entry for `other` has no factors left (post-rewind).
  bool entry_empty(InstanceId other) const;

  const std::map<InstanceId, SlidingHistory<Eigen::MatrixXd>>& entries() const {
    return entries_;
  }

 private:
  InstanceId owner_{0};
  std::size_t max_entries_{0};
  double max_age_{0.0};
  std::map<InstanceId, SlidingHistory<Eigen::MatrixXd>> entries_;
};

}  // namespace meshnav::state
