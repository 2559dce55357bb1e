#include "meshnav/mesh/twr.hpp"

#include <cmath>

namespace meshnav::mesh {

double sds_twr_bias(double xi_aba, double xi_bab, double t_reply) {
  if (!std::isfinite(xi_aba) || !std::isfinite(xi_bab) ||
      !std::isfinite(t_reply)) {
    throw ContractError("sds_twr_bias: non-finite input");
  }
  return 0.25 * (xi_aba - xi_bab) * t_reply;
}

void ClockModel::set_offset(InstanceId id, double xi) {
  if (std::abs(xi) >= 100e-6) {
    throw ContractError("clock frequency offset must stay below 100 ppm");
  }
  frequency_offsets[id] = xi;
}

double ClockModel::offset(InstanceId id) const {
  auto it = frequency_offsets.find(id);
  return it == frequency_offsets.end() ? 0.0 : it->second;
}

double ClockModel::range_error(InstanceId a, InstanceId b) const {
  return kSpeedOfLight * sds_twr_bias(offset(a), offset(b), reply_time);
}

}  // namespace meshnav::mesh
