#include "meshnav/mesh/simulate.hpp"

#include <random>

namespace meshnav::mesh {

namespace {

std::optional<Eigen::Vector3d> device_position(
    InstanceId id, double t, const PoseLookup& body_pose,
    const std::map<InstanceId, Eigen::Vector3d>& tag_levers,
    const std::map<InstanceId, Eigen::Vector3d>& anchor_positions) {
  auto anchor = anchor_positions.find(id);
  if (anchor != anchor_positions.end()) {
    return anchor->second;
  }
  auto tag = tag_levers.find(id);
  if (tag != tag_levers.end()) {
    const auto pose = body_pose(t);
    if (!pose.has_value()) {
      return std::nullopt;
    }
    return pose->transform(tag->second);
  }
  throw ContractError("mesh node " + std::to_string(id) +
                      " is neither a tag nor an anchor");
}

}  // namespace

std::vector<RangeSample> simulate_mesh(
    const MeshConfig& config, const PoseLookup& body_pose,
    const std::map<InstanceId, Eigen::Vector3d>& tag_levers,
    const std::map<InstanceId, Eigen::Vector3d>& anchor_positions,
    const models::RangeBiasTable& biases, double sigma_d,
    const OutlierModel& outliers, double t_begin, double t_end,
    std::uint64_t seed, MeshSimDiagnostics* diagnostics) {
  config.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform01(0.0, 1.0);
  std::uniform_real_distribution<double> outlier_offset(outliers.min_offset,
                                                        outliers.max_offset);

  MeshSimDiagnostics local;
  std::vector<RangeSample> samples;
  const int slots_per_cycle =
      static_cast<int>(config.node_ids.size() * (config.node_ids.size() - 1));
  const double cycle_duration = slots_per_cycle * config.slot_dt;

  for (double cycle_start = t_begin; cycle_start < t_end;
       cycle_start += cycle_duration) {
    for (const Slot& slot : schedule_cycle(config, cycle_start)) {
      if (slot.t >= t_end) {
        break;
      }
      // Draw per-slot randomness unconditionally so the stream stays aligned
      // across configurations with the same seed.
      const double u_drop = uniform01(rng);
      const double u_outlier = uniform01(rng);
      const double g_noise = gauss(rng);
      const double u_offset = outlier_offset(rng);

      const auto p_init = device_position(slot.initiator, slot.t, body_pose,
                                          tag_levers, anchor_positions);
      const auto p_resp = device_position(slot.responder, slot.t, body_pose,
                                          tag_levers, anchor_positions);
      if (!p_init.has_value() || !p_resp.has_value()) {
        ++local.slots_skipped_gap;
        continue;
      }
      if (u_drop < config.drop_probability) {
        ++local.slots_dropped;
        continue;
      }
      const double d = (*p_resp - *p_init).norm();
      double z;
      if (u_outlier < outliers.probability) {
        z = d + u_offset;
        ++local.outliers_injected;
      } else {
        const auto bias = biases.get(slot.initiator, slot.responder)
                              .value_or(models::PairBias{});
        z = bias.beta * d + bias.gamma + sigma_d * g_noise;
      }
      samples.push_back(RangeSample{slot.t, slot.initiator, slot.responder, z});
      ++local.samples;
    }
  }
  if (diagnostics != nullptr) {
    *diagnostics = local;
  }
  return samples;
}

}  // namespace meshnav::mesh
