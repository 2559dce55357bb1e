#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <utility>

#include "meshnav/fusion/observation.hpp"
#include "meshnav/models/imu_model.hpp"

namespace meshnav::models {

// Pairwise UWB range biases: z = beta * d + gamma + noise.
struct PairBias {
  double gamma{0.0};  // m
  double beta{1.0};   // dimensionless, > 0
};

/// Symmetric pairwise bias dictionary keyed by the unordered device pair.
class RangeBiasTable {
 public:
  void set(InstanceId a, InstanceId b, PairBias bias);
  std::optional<PairBias> get(InstanceId a, InstanceId b) const;
  std::size_t size() const { return table_.size(); }
  const std::map<std::pair<InstanceId, InstanceId>, PairBias>& entries()
      const {
    return table_;
  }

 private:
  static std::pair<InstanceId, InstanceId> key(InstanceId a, InstanceId b);
  std::map<std::pair<InstanceId, InstanceId>, PairBias> table_;
};

// Estimated distances below this are rejected (singular range direction).
inline constexpr double kRangeMinDistance = 0.1;  // m

/// Range between a body-mounted tag (lever arm p_IT) and an anchor.
/// Jacobians: d/dp_GI = -beta u^T, d/dtheta = beta u^T R skew(p_IT),
/// d/dp_GA = beta u^T with u the unit vector tag -> anchor.
/// Returns nullopt when the estimated distance is below `d_min`.
std::optional<fusion::LinearizedObservation> range_observation_tag_anchor(
    const ImuState& imu, InstanceId imu_id, const Eigen::Vector3d& tag_lever,
    const Eigen::Vector3d& anchor_position, InstanceId anchor_id,
    const PairBias& bias, double z, double sigma_d,
    double d_min = kRangeMinDistance);

/// Range between two anchor instances (no IMU involvement).
std::optional<fusion::LinearizedObservation> range_observation_anchor_anchor(
    const Eigen::Vector3d& p_i, InstanceId id_i, const Eigen::Vector3d& p_j,
    InstanceId id_j, const PairBias& bias, double z, double sigma_d,
    double d_min = kRangeMinDistance);

}  // namespace meshnav::models
