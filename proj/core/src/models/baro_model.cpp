#include "meshnav/models/baro_model.hpp"

#include <cmath>

#include "meshnav/state/types.hpp"

namespace meshnav::models {

namespace {
constexpr double kLapseRate = 0.0065;       // K/m
constexpr double kGasConstant = 8.31446;    // J/(mol K)
constexpr double kMolarMass = 0.0289644;    // kg/mol
constexpr double kStandardGravity = 9.80665;
constexpr double kExponent =
    kGasConstant * kLapseRate / (kStandardGravity * kMolarMass);
}  // namespace

double pressure_to_height(double pressure, const BaroParams& params) {
  if (pressure <= 0.0 || params.reference_pressure <= 0.0) {
    throw ContractError("pressure must be positive");
  }
  const double ratio = pressure / params.reference_pressure;
  return params.reference_temperature / kLapseRate *
         (1.0 - std::pow(ratio, kExponent));
}

double height_to_pressure(double height, const BaroParams& params) {
  const double base =
      1.0 - kLapseRate * height / params.reference_temperature;
  if (base <= 0.0) {
    throw ContractError("height outside the barometric model's range");
  }
  return params.reference_pressure * std::pow(base, 1.0 / kExponent);
}

double height_pressure_derivative(double pressure, const BaroParams& params) {
  const double p0 = params.reference_pressure;
  const double ratio = pressure / p0;
  return -params.reference_temperature / kLapseRate * kExponent *
         std::pow(ratio, kExponent - 1.0) / p0;
}

fusion::LinearizedObservation baro_height_observation(
    const ImuState& imu, InstanceId imu_id, const BaroParams& params,
    double z_pressure) {
  if (z_pressure <= 0.0) {
    throw ContractError("baro_height_observation: non-positive pressure");
  }
  const double h_meas = pressure_to_height(z_pressure, params);
  const Eigen::Matrix3d rot = imu.q_gi.matrix();
  const double h_est =
      (imu.p_gi + rot * params.lever_arm).z() - params.reference_height;

  const double dh_dp = height_pressure_derivative(z_pressure, params);
  const double sigma_h = std::abs(dh_dp) * params.sigma_pressure;

  fusion::LinearizedObservation obs;
  obs.residual = Eigen::VectorXd::Constant(1, h_meas - h_est);
  obs.noise = Eigen::MatrixXd::Constant(1, 1, sigma_h * sigma_h);

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(1, 15);
  jac(0, 2) = 1.0;
  jac.block<1, 3>(0, 6) =
      -(Eigen::RowVector3d::UnitZ() * rot * state::skew(params.lever_arm));
  obs.blocks.push_back({imu_id, std::move(jac)});
  return obs;
}

}  // namespace meshnav::models
