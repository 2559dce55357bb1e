#pragma once

#include <Eigen/Core>

#include "meshnav/state/types.hpp"

namespace meshnav::state {

enum class MeasurementKind { imu, baro, range, zupt };

/// Timestamped measurement held in the handler's replay log. `sensor_id`
/// names the producing instance; ranges additionally carry the responder in
/// `partner_id` (0 otherwise). IMU entries store [accel; gyro] in z with an
/// empty noise matrix and feed the propagation path on replay.
struct MeasurementRecord {
  MeasurementKind kind{MeasurementKind::range};
  Eigen::VectorXd z;
  Eigen::MatrixXd noise;
  InstanceId sensor_id{0};
  InstanceId partner_id{0};
  double timestamp{0.0};

  bool finite() const {
    return z.allFinite() && noise.allFinite() && std::isfinite(timestamp);
  }
};

}  // namespace meshnav::state
