#include "meshnav/mesh/schedule.hpp"

#include <algorithm>
#include <set>

namespace meshnav::mesh {

void MeshConfig::validate() const {
  if (!(slot_dt > 0.0)) {
    throw ContractError("mesh slot duration must be positive");
  }
  std::set<InstanceId> seen;
  for (InstanceId id : node_ids) {
    if (id <= 0 || !seen.insert(id).second) {
      throw ContractError("mesh node ids must be unique positive integers");
    }
  }
  if (drop_probability < 0.0 || drop_probability > 1.0) {
    throw ContractError("drop probability must lie in [0, 1]");
  }
}

double mesh_cycle_rate(int n_nodes, double slot_dt) {
  if (n_nodes < 2) {
    throw ContractError("mesh requires at least two nodes");
  }
  if (!(slot_dt > 0.0)) {
    throw ContractError("slot duration must be positive");
  }
  const double nm1 = static_cast<double>(n_nodes - 1);
  return 1.0 / (slot_dt * nm1 * nm1);
}

std::vector<Slot> schedule_cycle(const MeshConfig& config, double cycle_start) {
  config.validate();
  if (config.node_ids.size() < 2) {
    throw ContractError("mesh requires at least two nodes");
  }
  std::vector<InstanceId> ids = config.node_ids;
  std::sort(ids.begin(), ids.end());

  std::vector<Slot> slots;
  slots.reserve(ids.size() * (ids.size() - 1));
  int k = 0;
  for (InstanceId initiator : ids) {
    for (InstanceId responder : ids) {
      if (responder == initiator) {
        continue;
      }
      slots.push_back(Slot{cycle_start + k * config.slot_dt, initiator,
                           responder});
      ++k;
    }
  }
  return slots;
}

MeshRateReport mesh_rate_report(int n_nodes, double slot_dt) {
  MeshRateReport report;
  report.formula_hz = mesh_cycle_rate(n_nodes, slot_dt);
  report.slots_per_cycle = n_nodes * (n_nodes - 1);
  report.slot_rate_hz = 1.0 / (slot_dt * report.slots_per_cycle);
  report.consistent = report.formula_hz == report.slot_rate_hz;
  if (!report.consistent) {
    report.note =
        "cycle-rate formula 1/(dt (N-1)^2) and the literal N(N-1)-slot "
        "schedule disagree by a factor N/(N-1); the simulator runs the "
        "literal schedule";
  }
  return report;
}

}  // namespace meshnav::mesh
