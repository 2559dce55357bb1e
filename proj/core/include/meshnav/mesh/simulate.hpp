#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "meshnav/mesh/schedule.hpp"
#include "meshnav/models/range_model.hpp"
#include "meshnav/state/pose.hpp"

namespace meshnav::mesh {

// One SDS-TWR measurement as reported by the initiator.
struct RangeSample {
  double t{0.0};
  InstanceId initiator{0};
  InstanceId responder{0};
  double range{0.0};
};

// NLOS-like positive bias: the sample is replaced by truth + U[min, max].
struct OutlierModel {
  double probability{0.0};
  double min_offset{0.5};  // m
  double max_offset{3.0};  // m
};

struct MeshSimDiagnostics {
  int samples{0};
  int slots_dropped{0};
  int slots_skipped_gap{0};
  int outliers_injected{0};
};

// Body pose at time t, or nullopt when the trajectory has a gap there.
using PoseLookup = std::function<std::optional<state::Pose>(double)>;

/// Runs the literal TDMA schedule over [t_begin, t_end): for every slot the
/// true distance between the two devices at slot time (tags from the
/// interpolated body pose plus lever arm), measured as beta d + gamma +
/// N(0, sigma_d^2) with the pair's bias. A slot is voided entirely with
/// `drop_probability` (the schedule never shifts); with the outlier model's
/// probability the sample is replaced by an NLOS-like outlier.
std::vector<RangeSample> simulate_mesh(
    const MeshConfig& config, const PoseLookup& body_pose,
    const std::map<InstanceId, Eigen::Vector3d>& tag_levers,
    const std::map<InstanceId, Eigen::Vector3d>& anchor_positions,
    const models::RangeBiasTable& biases, double sigma_d,
    const OutlierModel& outliers, double t_begin, double t_end,
    std::uint64_t seed, MeshSimDiagnostics* diagnostics = nullptr);

}  // namespace meshnav::mesh
