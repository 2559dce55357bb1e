#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "meshnav/fusion/observation.hpp"
#include "meshnav/models/baro_model.hpp"
#include "meshnav/models/imu_model.hpp"
#include "meshnav/models/range_model.hpp"
#include "meshnav/models/zupt_model.hpp"
#include "meshnav/state/belief.hpp"
#include "meshnav/state/error_state.hpp"
#include "meshnav/state/factor_table.hpp"
#include "meshnav/state/history.hpp"
#include "meshnav/state/measurement.hpp"

namespace meshnav::fusion {

enum class SensorType { imu, barometer, uwb_tag, uwb_anchor };

enum class Strategy { dp, dah };

struct ImuConstants {
  models::ImuNoise noise;
  Eigen::Vector3d gravity{models::kGravity};
};

struct BaroConstants {
  models::BaroParams params;
};

struct TagConstants {
  Eigen::Vector3d lever_arm{Eigen::Vector3d::Zero()};  // p_IT
};

struct AnchorConstants {
  // Pairwise biases toward other devices, keyed by the other id.
  std::map<InstanceId, models::PairBias> biases;
};

using InstanceConstants = std::variant<std::monostate, ImuConstants,
                                       BaroConstants, TagConstants,
                                       AnchorConstants>;

/// One registered sensor instance: belief and factor histories plus
/// type-specific constants. Tags and barometers are stateless (their belief
/// history stays empty); the IMU carries the 15-dim error state, anchors a
/// 3-dim position.
struct SensorInstance {
  InstanceId id{0};
  SensorType type{SensorType::uwb_anchor};
  state::SlidingHistory<state::Belief> beliefs;
  state::FactorTable factors;
  InstanceConstants constants;
  state::Belief registration_prior;
  double registration_time{0.0};
  state::StateLayout layout{state::StateLayout::vector_space(0)};

  bool stateful() const { return layout.mean_dim() > 0; }
  int error_dim() const { return layout.error_dim(); }
};

struct HandlerOptions {
  Strategy strategy{Strategy::dp};
  double history_window{5.0};  // seconds of belief/factor/measurement history
  bool chi2_gate{false};       // optional 99.9% Mahalanobis gate
  double range_d_min{models::kRangeMinDistance};
  models::ZuptNoise zupt_noise{};
};

struct HandlerCounters {
  int applied_updates{0};
  int propagations{0};
  int dropped_stale{0};
  int dropped_unknown_instance{0};
  int dropped_no_belief{0};
  int dropped_singular_geometry{0};
  int dropped_missing_bias{0};
  int dropped_gate{0};
  int dropped_tag_tag{0};
  int dropped_out_of_order_imu{0};
  int out_of_sequence_replays{0};
};

enum class ProcessOutcome { applied, replayed_out_of_sequence, dropped };

/// Instance handler: registers/removes sensor instances at runtime, routes
/// measurements, and runs prediction and update steps under the DP or DAH
/// decoupling strategy with rewind-and-replay for out-of-sequence updates.
class InstanceHandler {
 public:
  explicit InstanceHandler(HandlerOptions options = {});

  void register_instance(InstanceId id, SensorType type,
                         state::Belief initial_belief,
                         InstanceConstants constants);
  void remove_instance(InstanceId id);

  // IMU propagation step. Readings must arrive in order; an out-of-order
  // reading is rejected (only update measurements take the replay path).
  ProcessOutcome process_imu(const models::ImuReading& reading);

  // Update measurements (baro / range / zupt). Timestamps older than the
  // newest processed time rewind and replay; staler than the window drop.
  ProcessOutcome process_measurement(const state::MeasurementRecord& m);

  bool has_instance(InstanceId id) const { return instances_.count(id) > 0; }
  const SensorInstance& instance(InstanceId id) const;
  const state::Belief& belief(InstanceId id) const;
  std::optional<state::Belief> belief_at(InstanceId id, double t) const;
  std::vector<InstanceId> stateful_ids() const;

  std::optional<models::PairBias> lookup_bias(InstanceId a, InstanceId b) const;
  void set_pair_bias(InstanceId a, InstanceId b, models::PairBias bias);

  /// Full-state reconstruction from per-instance beliefs and factorized
  /// cross-covariances (ascending id order), as a DP update would stack it.
  struct StackedEstimate {
    std::vector<InstanceId> order;
    std::vector<int> offsets;
    std::vector<Eigen::VectorXd> means;
    Eigen::MatrixXd covariance;
    int error_dim{0};
  };
  StackedEstimate assemble_full(double t) const;

  const HandlerCounters& counters() const { return counters_; }
  const HandlerOptions& options() const { return options_; }
  double latest_time() const { return latest_time_; }

 private:
  SensorInstance& require_instance(InstanceId id);
  const SensorInstance& require_instance(InstanceId id) const;

  // Stateful ids having a belief at or before t, ascending.
  std::vector<InstanceId> stacked_ids_at(double t) const;

  struct ResolvedObservation {
    LinearizedObservation obs;
    std::vector<InstanceId> involved;  // ascending, stateful
  };
  std::optional<ResolvedObservation> build_observation(
      const state::MeasurementRecord& m, double t);

  struct Joint {
    std::vector<InstanceId> ids;
    std::vector<int> offsets;
    std::vector<int> dims;
    Eigen::MatrixXd covariance;
    int total{0};
  };
  Joint assemble(const std::vector<InstanceId>& ids, double t) const;

  ProcessOutcome apply_update(const state::MeasurementRecord& m);
  void update_dp(const ResolvedObservation& resolved, double t);
  void update_dah(const ResolvedObservation& resolved, double t);
  // Shared EKF step over the given joint; returns I - K H over the joint.
  Eigen::MatrixXd joint_ekf_update(const LinearizedObservation& obs,
                                   const Joint& joint, double t);
  void refactor_pairs(const Joint& joint, const Eigen::MatrixXd& cov_post,
                      double t);

  ProcessOutcome process_out_of_sequence(const state::MeasurementRecord& m);
  void rewind_to(double t);
  void replay_after(double t);
  void propagate_internal(const models::ImuReading& reading);

  void record(const state::MeasurementRecord& m);
  void seed_pair_factors(SensorInstance& a, SensorInstance& b, double t);

  HandlerOptions options_;
  std::map<InstanceId, SensorInstance> instances_;
  state::SlidingHistory<state::MeasurementRecord> measurements_;
  std::optional<models::ImuReading> latest_imu_reading_;
  InstanceId imu_id_{0};
  double latest_time_{-std::numeric_limits<double>::infinity()};
  HandlerCounters counters_;
  bool replaying_{false};
};

}  // namespace meshnav::fusion
