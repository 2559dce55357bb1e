#include "meshnav/fusion/instance_handler.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

namespace meshnav::fusion {

namespace {

// 99.9% chi-square quantiles for residual dimensions 1..6.
constexpr double kChi2Gate999[6] = {10.828, 13.816, 16.266,
                                    18.467, 20.515, 22.458};

state::StateLayout layout_for(SensorType type) {
  switch (type) {
    case SensorType::imu:
      return state::StateLayout::imu();
    case SensorType::uwb_anchor:
      return state::StateLayout::vector_space(3);
    default:
      return state::StateLayout::vector_space(0);
  }
}

}  // namespace

InstanceHandler::InstanceHandler(HandlerOptions options)
    : options_(options),
      measurements_(0, options.history_window,
                    state::SlidingHistory<
                        state::MeasurementRecord>::OnEqual::append) {}

const SensorInstance& InstanceHandler::instance(InstanceId id) const {
  return require_instance(id);
}

SensorInstance& InstanceHandler::require_instance(InstanceId id) {
  auto it = instances_.find(id);
  if (it == instances_.end()) {
    throw ContractError("unknown instance id " + std::to_string(id));
  }
  return it->second;
}

const SensorInstance& InstanceHandler::require_instance(InstanceId id) const {
  auto it = instances_.find(id);
  if (it == instances_.end()) {
    throw ContractError("unknown instance id " + std::to_string(id));
  }
  return it->second;
}

void InstanceHandler::register_instance(InstanceId id, SensorType type,
                                        state::Belief initial_belief,
                                        InstanceConstants constants) {
  if (id <= 0) {
    throw ContractError("instance id must be positive");
  }
  if (instances_.count(id) > 0) {
    throw ContractError("duplicate instance id " + std::to_string(id));
  }
  if (type == SensorType::imu && imu_id_ != 0) {
    throw ContractError("exactly one IMU instance may act as the propagation sensor");
  }

  SensorInstance inst;
  inst.id = id;
  inst.type = type;
  inst.layout = layout_for(type);
  inst.constants = std::move(constants);
  inst.registration_time = initial_belief.timestamp;
  inst.beliefs = state::SlidingHistory<state::Belief>(0, options_.history_window);
  inst.factors = state::FactorTable(id, 0, options_.history_window);

  if (inst.stateful()) {
    if (initial_belief.mean.size() != inst.layout.mean_dim() ||
        initial_belief.covariance.rows() != inst.layout.error_dim()) {
      throw ContractError("initial belief dimensions do not match sensor type");
    }
    if (!initial_belief.covariance_psd(1e-10)) {
      throw ContractError("initial covariance is not positive semi-definite");
    }
    initial_belief.instance_id = id;
    initial_belief.symmetrize();
    inst.registration_prior = initial_belief;
    inst.beliefs.insert(initial_belief.timestamp, initial_belief);
  }

  auto [it, ok] = instances_.emplace(id, std::move(inst));
  SensorInstance& stored = it->second;
  if (type == SensorType::imu) {
    imu_id_ = id;
  }
  if (stored.stateful()) {
    for (auto& [other_id, other] : instances_) {
      if (other_id != id && other.stateful()) {
        seed_pair_factors(stored, other, stored.registration_time);
      }
    }
  }
}

// New instances start uncorrelated: the lower id stores a zero cross block,
// the higher id the identity (the canonical factor form).
void InstanceHandler::seed_pair_factors(SensorInstance& a, SensorInstance& b,
                                        double t) {
  SensorInstance& lo = a.id < b.id ? a : b;
  SensorInstance& hi = a.id < b.id ? b : a;
  const int dim_lo = lo.error_dim();
  const int dim_hi = hi.error_dim();
  lo.factors.push(hi.id, t, Eigen::MatrixXd::Zero(dim_lo, dim_hi));
  hi.factors.push(lo.id, t, Eigen::MatrixXd::Identity(dim_hi, dim_hi));
}

void InstanceHandler::remove_instance(InstanceId id) {
  SensorInstance& inst = require_instance(id);
  if (inst.type == SensorType::imu) {
    throw ContractError("cannot remove the propagation sensor");
  }
  instances_.erase(id);
  for (auto& [other_id, other] : instances_) {
    other.factors.erase(id);
  }
}

const state::Belief& InstanceHandler::belief(InstanceId id) const {
  const SensorInstance& inst = require_instance(id);
  if (inst.beliefs.empty()) {
    throw HistoryError("instance carries no estimated state");
  }
  return inst.beliefs.latest();
}

std::optional<state::Belief> InstanceHandler::belief_at(InstanceId id,
                                                        double t) const {
  const SensorInstance& inst = require_instance(id);
  const auto* entry = inst.beliefs.query_entry(t);
  if (entry == nullptr) {
    return std::nullopt;
  }
  return entry->value;
}

std::vector<InstanceId> InstanceHandler::stateful_ids() const {
  std::vector<InstanceId> ids;
  for (const auto& [id, inst] : instances_) {
    if (inst.stateful()) {
      ids.push_back(id);
    }
  }
  return ids;  // std::map iterates in ascending key order
}

std::vector<InstanceId> InstanceHandler::stacked_ids_at(double t) const {
  std::vector<InstanceId> ids;
  for (const auto& [id, inst] : instances_) {
    if (inst.stateful() && inst.beliefs.query_entry(t) != nullptr) {
      ids.push_back(id);
    }
  }
  return ids;
}

std::optional<models::PairBias> InstanceHandler::lookup_bias(
    InstanceId a, InstanceId b) const {
  for (InstanceId side : {a, b}) {
    auto it = instances_.find(side);
    if (it == instances_.end()) {
      continue;
    }
    const auto* anchor = std::get_if<AnchorConstants>(&it->second.constants);
    if (anchor == nullptr) {
      continue;
    }
    auto bias = anchor->biases.find(side == a ? b : a);
    if (bias != anchor->biases.end()) {
      return bias->second;
    }
  }
  return std::nullopt;
}

void InstanceHandler::set_pair_bias(InstanceId a, InstanceId b,
                                    models::PairBias bias) {
  for (InstanceId side : {std::min(a, b), std::max(a, b)}) {
    auto it = instances_.find(side);
    if (it == instances_.end()) {
      continue;
    }
    auto* anchor = std::get_if<AnchorConstants>(&it->second.constants);
    if (anchor != nullptr) {
      anchor->biases[side == a ? b : a] = bias;
      return;
    }
  }
  throw ContractError("pair bias requires at least one anchor instance");
}

// ---------------------------------------------------------------------------
// Propagation

ProcessOutcome InstanceHandler::process_imu(const models::ImuReading& reading) {
  if (!reading.finite()) {
    throw ContractError("non-finite IMU reading");
  }
  if (imu_id_ == 0) {
    throw ContractError("no IMU instance registered");
  }
  const SensorInstance& imu = require_instance(imu_id_);
  const double dt = reading.t - imu.beliefs.latest().timestamp;
  if (dt <= 0.0) {
    ++counters_.dropped_out_of_order_imu;
    return ProcessOutcome::dropped;
  }
  state::MeasurementRecord rec;
  rec.kind = state::MeasurementKind::imu;
  rec.z = Eigen::VectorXd(6);
  rec.z << reading.accel, reading.gyro;
  rec.noise = Eigen::MatrixXd();
  rec.sensor_id = imu_id_;
  rec.timestamp = reading.t;
  record(rec);

  propagate_internal(reading);
  latest_time_ = std::max(latest_time_, reading.t);
  return ProcessOutcome::applied;
}

void InstanceHandler::propagate_internal(const models::ImuReading& reading) {
  SensorInstance& imu = require_instance(imu_id_);
  const state::Belief& prev = imu.beliefs.latest();
  double remaining = reading.t - prev.timestamp;
  if (remaining <= 0.0) {
    ++counters_.dropped_out_of_order_imu;
    return;
  }
  const auto* constants = std::get_if<ImuConstants>(&imu.constants);
  if (constants == nullptr) {
    throw ContractError("IMU instance lacks its constants");
  }

  models::ImuState x = models::ImuState::from_vector(prev.mean);
  Eigen::Matrix<double, 15, 15> cov = prev.covariance;
  Eigen::Matrix<double, 15, 15> phi_total =
      Eigen::Matrix<double, 15, 15>::Identity();
  // Long gaps integrate in <= 0.1 s chunks with the reading held.
  while (remaining > 1e-12) {
    const double dt = std::min(remaining, 0.1);
    const auto step =
        models::imu_propagate(x, cov, reading, dt, constants->noise,
                              constants->gravity);
    x = step.state;
    cov = step.covariance;
    phi_total = step.phi * phi_total;
    remaining -= dt;
  }

  state::Belief next(imu_id_, reading.t, x.to_vector(), cov);
  imu.beliefs.insert(reading.t, std::move(next));

  // Isolated prediction: only the propagating side of each factor moves.
  for (const auto& [other_id, hist] : imu.factors.entries()) {
    if (!hist.empty()) {
      imu.factors.push(other_id, reading.t, phi_total * hist.latest());
    }
  }
  latest_imu_reading_ = reading;
  ++counters_.propagations;
}

// ---------------------------------------------------------------------------
// Measurement routing

void InstanceHandler::record(const state::MeasurementRecord& m) {
  measurements_.insert(m.timestamp, m);
}

ProcessOutcome InstanceHandler::process_measurement(
    const state::MeasurementRecord& m) {
  if (!m.finite()) {
    throw ContractError("non-finite measurement record");
  }
  if (m.kind == state::MeasurementKind::imu) {
    models::ImuReading reading;
    reading.accel = m.z.segment<3>(0);
    reading.gyro = m.z.segment<3>(3);
    reading.t = m.timestamp;
    return process_imu(reading);
  }
  if (m.timestamp < latest_time_) {
    return process_out_of_sequence(m);
  }
  record(m);
  const ProcessOutcome outcome = apply_update(m);
  latest_time_ = std::max(latest_time_, m.timestamp);
  return outcome;
}

std::optional<InstanceHandler::ResolvedObservation>
InstanceHandler::build_observation(const state::MeasurementRecord& m,
                                   double t) {
  switch (m.kind) {
    case state::MeasurementKind::range: {
      auto init_it = instances_.find(m.sensor_id);
      auto resp_it = instances_.find(m.partner_id);
      if (init_it == instances_.end() || resp_it == instances_.end()) {
        ++counters_.dropped_unknown_instance;
        return std::nullopt;
      }
      const SensorInstance& a = init_it->second;
      const SensorInstance& b = resp_it->second;
      const bool a_tag = a.type == SensorType::uwb_tag;
      const bool b_tag = b.type == SensorType::uwb_tag;
      const bool a_anchor = a.type == SensorType::uwb_anchor;
      const bool b_anchor = b.type == SensorType::uwb_anchor;
      if (a_tag && b_tag) {
        ++counters_.dropped_tag_tag;
        return std::nullopt;
      }
      if (!((a_tag && b_anchor) || (a_anchor && b_tag) ||
            (a_anchor && b_anchor))) {
        ++counters_.dropped_unknown_instance;
        return std::nullopt;
      }
      const auto bias = lookup_bias(a.id, b.id);
      if (!bias.has_value()) {
        ++counters_.dropped_missing_bias;
        return std::nullopt;
      }
      const double z = m.z(0);
      const double sigma_d = std::sqrt(m.noise(0, 0));
      if (a_anchor && b_anchor) {
        const auto bel_a = belief_at(a.id, t);
        const auto bel_b = belief_at(b.id, t);
        if (!bel_a || !bel_b) {
          ++counters_.dropped_no_belief;
          return std::nullopt;
        }
        auto obs = models::range_observation_anchor_anchor(
            bel_a->mean, a.id, bel_b->mean, b.id, *bias, z, sigma_d,
            options_.range_d_min);
        if (!obs) {
          ++counters_.dropped_singular_geometry;
          return std::nullopt;
        }
        return ResolvedObservation{std::move(*obs),
                                   {std::min(a.id, b.id), std::max(a.id, b.id)}};
      }
      const SensorInstance& tag = a_tag ? a : b;
      const SensorInstance& anchor = a_tag ? b : a;
      const auto bel_imu = belief_at(imu_id_, t);
      const auto bel_anchor = belief_at(anchor.id, t);
      if (!bel_imu || !bel_anchor) {
        ++counters_.dropped_no_belief;
        return std::nullopt;
      }
      const auto* tag_constants = std::get_if<TagConstants>(&tag.constants);
      if (tag_constants == nullptr) {
        throw ContractError("tag instance lacks its lever arm");
      }
      auto obs = models::range_observation_tag_anchor(
          models::ImuState::from_vector(bel_imu->mean), imu_id_,
          tag_constants->lever_arm, bel_anchor->mean, anchor.id, *bias, z,
          sigma_d, options_.range_d_min);
      if (!obs) {
        ++counters_.dropped_singular_geometry;
        return std::nullopt;
      }
      std::vector<InstanceId> involved{imu_id_, anchor.id};
      std::sort(involved.begin(), involved.end());
      return ResolvedObservation{std::move(*obs), std::move(involved)};
    }
    case state::MeasurementKind::baro: {
      auto baro_it = instances_.find(m.sensor_id);
      if (baro_it == instances_.end() || imu_id_ == 0) {
        ++counters_.dropped_unknown_instance;
        return std::nullopt;
      }
      const auto* constants =
          std::get_if<BaroConstants>(&baro_it->second.constants);
      if (constants == nullptr) {
        throw ContractError("barometer instance lacks its parameters");
      }
      const auto bel_imu = belief_at(imu_id_, t);
      if (!bel_imu) {
        ++counters_.dropped_no_belief;
        return std::nullopt;
      }
      auto obs = models::baro_height_observation(
          models::ImuState::from_vector(bel_imu->mean), imu_id_,
          constants->params, m.z(0));
      return ResolvedObservation{std::move(obs), {imu_id_}};
    }
    case state::MeasurementKind::zupt: {
      if (instances_.count(m.sensor_id) == 0 || m.sensor_id != imu_id_) {
        ++counters_.dropped_unknown_instance;
        return std::nullopt;
      }
      const auto bel_imu = belief_at(imu_id_, t);
      if (!bel_imu || !latest_imu_reading_.has_value()) {
        ++counters_.dropped_no_belief;
        return std::nullopt;
      }
      const auto& constants =
          std::get<ImuConstants>(require_instance(imu_id_).constants);
      auto obs = models::zupt_observation(
          models::ImuState::from_vector(bel_imu->mean), imu_id_,
          *latest_imu_reading_, -constants.gravity, options_.zupt_noise);
      if (m.noise.rows() == 6 && m.noise.cols() == 6) {
        obs.noise = m.noise;
      }
      return ResolvedObservation{std::move(obs), {imu_id_}};
    }
    case state::MeasurementKind::imu:
      break;
  }
  throw ContractError("unroutable measurement kind");
}

InstanceHandler::Joint InstanceHandler::assemble(
    const std::vector<InstanceId>& ids, double t) const {
  Joint joint;
  joint.ids = ids;
  joint.offsets.reserve(ids.size());
  joint.dims.reserve(ids.size());
  int total = 0;
  for (InstanceId id : ids) {
    const SensorInstance& inst = require_instance(id);
    joint.offsets.push_back(total);
    joint.dims.push_back(inst.error_dim());
    total += inst.error_dim();
  }
  joint.total = total;
  joint.covariance = Eigen::MatrixXd::Zero(total, total);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const SensorInstance& inst_i = require_instance(ids[i]);
    const state::Belief& bel_i = *(&inst_i.beliefs.query(t));
    joint.covariance.block(joint.offsets[i], joint.offsets[i], joint.dims[i],
                           joint.dims[i]) = bel_i.covariance;
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const SensorInstance& inst_j = require_instance(ids[j]);
      const Eigen::MatrixXd cross = state::reconstruct_cross(
          inst_i.factors.at_or_before(ids[j], t),
          inst_j.factors.at_or_before(ids[i], t));
      joint.covariance.block(joint.offsets[i], joint.offsets[j], joint.dims[i],
                             joint.dims[j]) = cross;
      joint.covariance.block(joint.offsets[j], joint.offsets[i], joint.dims[j],
                             joint.dims[i]) = cross.transpose();
    }
  }
  return joint;
}

ProcessOutcome InstanceHandler::apply_update(const state::MeasurementRecord& m) {
  const double t = m.timestamp;
  auto resolved = build_observation(m, t);
  if (!resolved.has_value()) {
    return ProcessOutcome::dropped;
  }
  resolved->obs.check_consistent();

  if (options_.chi2_gate) {
    const Joint joint = assemble(resolved->involved, t);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(resolved->obs.residual_dim(),
                                              joint.total);
    for (std::size_t i = 0; i < joint.ids.size(); ++i) {
      const Eigen::MatrixXd* blk = resolved->obs.block_for(joint.ids[i]);
      if (blk != nullptr) {
        h.block(0, joint.offsets[i], blk->rows(), blk->cols()) = *blk;
      }
    }
    const Eigen::MatrixXd s =
        h * joint.covariance * h.transpose() + resolved->obs.noise;
    const double maha =
        resolved->obs.residual.dot(s.ldlt().solve(resolved->obs.residual));
    const int dim = resolved->obs.residual_dim();
    if (dim >= 1 && dim <= 6 && maha > kChi2Gate999[dim - 1]) {
      ++counters_.dropped_gate;
      return ProcessOutcome::dropped;
    }
  }

  if (options_.strategy == Strategy::dp) {
    update_dp(*resolved, t);
  } else {
    update_dah(*resolved, t);
  }
  ++counters_.applied_updates;
  return ProcessOutcome::applied;
}

Eigen::MatrixXd InstanceHandler::joint_ekf_update(
    const LinearizedObservation& obs, const Joint& joint, double t) {
  const int m = obs.residual_dim();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, joint.total);
  for (std::size_t i = 0; i < joint.ids.size(); ++i) {
    const Eigen::MatrixXd* blk = obs.block_for(joint.ids[i]);
    if (blk != nullptr) {
      if (blk->cols() != joint.dims[i]) {
        throw ContractError("observation block does not match instance error dim");
      }
      h.block(0, joint.offsets[i], m, joint.dims[i]) = *blk;
    }
  }

  const Eigen::MatrixXd& p = joint.covariance;
  const Eigen::MatrixXd hp = h * p;
  Eigen::MatrixXd s = hp * h.transpose() + obs.noise;
  s = state::symmetrized(s);
  const Eigen::MatrixXd k = s.ldlt().solve(hp).transpose();
  const Eigen::VectorXd delta = k * obs.residual;
  const Eigen::MatrixXd correction =
      Eigen::MatrixXd::Identity(joint.total, joint.total) - k * h;
  Eigen::MatrixXd cov_post = correction * p * correction.transpose() +
                             k * obs.noise * k.transpose();
  cov_post = state::symmetrized(cov_post);

  for (std::size_t i = 0; i < joint.ids.size(); ++i) {
    SensorInstance& inst = require_instance(joint.ids[i]);
    const state::Belief& prior = inst.beliefs.query(t);
    Eigen::VectorXd mean_post = inst.layout.boxplus(
        prior.mean, delta.segment(joint.offsets[i], joint.dims[i]));
    state::Belief post(joint.ids[i], t, std::move(mean_post),
                       cov_post.block(joint.offsets[i], joint.offsets[i],
                                      joint.dims[i], joint.dims[i]));
    inst.beliefs.insert(t, std::move(post));
  }
  refactor_pairs(joint, cov_post, t);
  return correction;
}

void InstanceHandler::refactor_pairs(const Joint& joint,
                                     const Eigen::MatrixXd& cov_post,
                                     double t) {
  // Exact re-factorization: full cross block on the lower id, identity on
  // the higher; the inner dimension equals the higher instance's error dim.
  for (std::size_t i = 0; i < joint.ids.size(); ++i) {
    for (std::size_t j = i + 1; j < joint.ids.size(); ++j) {
      SensorInstance& lo = require_instance(joint.ids[i]);
      SensorInstance& hi = require_instance(joint.ids[j]);
      lo.factors.push(hi.id, t,
                      cov_post.block(joint.offsets[i], joint.offsets[j],
                                     joint.dims[i], joint.dims[j]));
      hi.factors.push(lo.id, t,
                      Eigen::MatrixXd::Identity(joint.dims[j], joint.dims[j]));
    }
  }
}

void InstanceHandler::update_dp(const ResolvedObservation& resolved,
                                double t) {
  const Joint joint = assemble(stacked_ids_at(t), t);
  joint_ekf_update(resolved.obs, joint, t);
}

void InstanceHandler::update_dah(const ResolvedObservation& resolved,
                                 double t) {
  const Joint joint = assemble(resolved.involved, t);
  const Eigen::MatrixXd correction = joint_ekf_update(resolved.obs, joint, t);

  // Correct the involved-side factors toward every uninvolved instance by
  // left-multiplying the involved-block correction; the uninvolved side is
  // left untouched (this is the DAH approximation).
  for (InstanceId k : stacked_ids_at(t)) {
    if (std::find(joint.ids.begin(), joint.ids.end(), k) != joint.ids.end()) {
      continue;
    }
    int inner = -1;
    bool have_all = true;
    for (InstanceId v : joint.ids) {
      const SensorInstance& inst_v = require_instance(v);
      if (inst_v.factors.entry_empty(k)) {
        have_all = false;
        break;
      }
      const int cols =
          static_cast<int>(inst_v.factors.at_or_before(k, t).cols());
      if (inner < 0) {
        inner = cols;
      } else if (inner != cols) {
        throw ContractError("inconsistent factor inner dimensions in DAH correction");
      }
    }
    if (!have_all) {
      continue;
    }
    Eigen::MatrixXd stacked(joint.total, inner);
    for (std::size_t i = 0; i < joint.ids.size(); ++i) {
      stacked.block(joint.offsets[i], 0, joint.dims[i], inner) =
          require_instance(joint.ids[i]).factors.at_or_before(k, t);
    }
    stacked = correction * stacked;
    for (std::size_t i = 0; i < joint.ids.size(); ++i) {
      require_instance(joint.ids[i])
          .factors.push(k, t,
                        stacked.block(joint.offsets[i], 0, joint.dims[i],
                                      inner));
    }
  }
}

// ---------------------------------------------------------------------------
// Out-of-sequence handling

ProcessOutcome InstanceHandler::process_out_of_sequence(
    const state::MeasurementRecord& m) {
  const double t = m.timestamp;
  if (t < latest_time_ - options_.history_window) {
    ++counters_.dropped_stale;
    return ProcessOutcome::dropped;
  }
  rewind_to(t);
  record(m);
  apply_update(m);
  latest_time_ = std::max(latest_time_, t);
  replay_after(t);
  ++counters_.out_of_sequence_replays;
  return ProcessOutcome::replayed_out_of_sequence;
}

void InstanceHandler::rewind_to(double t) {
  for (auto& [id, inst] : instances_) {
    inst.beliefs.truncate_after(t);
    if (inst.stateful() && inst.beliefs.empty()) {
      inst.beliefs.insert(inst.registration_time, inst.registration_prior);
    }
    inst.factors.truncate_after(t);
  }
  // Re-seed canonical zero factors for pairs whose whole history was newer
  // than the rewind point (pairs created at registration).
  for (auto& [id_a, inst_a] : instances_) {
    if (!inst_a.stateful()) {
      continue;
    }
    for (auto& [id_b, inst_b] : instances_) {
      if (id_b <= id_a || !inst_b.stateful()) {
        continue;
      }
      if (inst_a.factors.entry_empty(id_b) ||
          inst_b.factors.entry_empty(id_a)) {
        seed_pair_factors(inst_a, inst_b,
                          std::max(inst_a.registration_time,
                                   inst_b.registration_time));
      }
    }
  }
  latest_imu_reading_.reset();
  for (auto it = measurements_.end(); it != measurements_.begin();) {
    --it;
    if (it->t <= t && it->value.kind == state::MeasurementKind::imu) {
      models::ImuReading reading;
      reading.accel = it->value.z.segment<3>(0);
      reading.gyro = it->value.z.segment<3>(3);
      reading.t = it->value.timestamp;
      latest_imu_reading_ = reading;
      break;
    }
  }
  latest_time_ = t;
}

void InstanceHandler::replay_after(double t) {
  const auto pending = measurements_.entries_after(t);
  replaying_ = true;
  for (const auto& entry : pending) {
    const state::MeasurementRecord& m = entry.value;
    if (m.kind == state::MeasurementKind::imu) {
      models::ImuReading reading;
      reading.accel = m.z.segment<3>(0);
      reading.gyro = m.z.segment<3>(3);
      reading.t = m.timestamp;
      propagate_internal(reading);
    } else {
      apply_update(m);
    }
    latest_time_ = std::max(latest_time_, m.timestamp);
  }
  replaying_ = false;
}

// ---------------------------------------------------------------------------

InstanceHandler::StackedEstimate InstanceHandler::assemble_full(
    double t) const {
  const Joint joint = assemble(stacked_ids_at(t), t);
  StackedEstimate est;
  est.order = joint.ids;
  est.offsets = joint.offsets;
  est.covariance = joint.covariance;
  est.error_dim = joint.total;
  est.means.reserve(joint.ids.size());
  for (InstanceId id : joint.ids) {
    est.means.push_back(require_instance(id).beliefs.query(t).mean);
  }
  return est;
}

}  // namespace meshnav::fusion
