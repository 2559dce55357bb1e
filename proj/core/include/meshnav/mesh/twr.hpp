#pragma once

#include <map>

#include "meshnav/state/types.hpp"

namespace meshnav::mesh {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// SDS-TWR residual time-of-flight error for unequal clock frequency
/// offsets: t_err = 1/4 (xi_ABA - xi_BAB) t_reply. Offsets are dimensionless
/// fractions (40 ppm -> 4e-5); multiply by kSpeedOfLight for the range error.
double sds_twr_bias(double xi_aba, double xi_bab, double t_reply);

/// Per-node clock frequency offsets (fractions, |xi| < 100 ppm) with the
/// common reply time assumed by the error model.
struct ClockModel {
  std::map<InstanceId, double> frequency_offsets;
  double reply_time{1e-3};  // s

  void set_offset(InstanceId id, double xi);
  double offset(InstanceId id) const;
  // Range error (m) of a full SDS-TWR exchange initiated by `a` toward `b`.
  double range_error(InstanceId a, InstanceId b) const;
};

}  // namespace meshnav::mesh
