#pragma once

#include <string>
#include <vector>

#include "meshnav/state/types.hpp"

namespace meshnav::mesh {

struct MeshConfig {
  std::vector<InstanceId> node_ids;  // unique, positive
  double slot_dt{0.010};             // s per SDS-TWR slot
  double drop_probability{0.0};

  void validate() const;
};

// Cycle rate 1 / (dt (N-1)^2); the published formula for the meshed scheme.
double mesh_cycle_rate(int n_nodes, double slot_dt);

struct Slot {
  double t;
  InstanceId initiator;
  InstanceId responder;
};

/// One full-mesh cycle: N(N-1) slots, initiators in ascending id order, each
/// ranging to all other nodes in ascending id order, slot k starting at
/// cycle_start + k * slot_dt. Deterministic for a given config.
std::vector<Slot> schedule_cycle(const MeshConfig& config, double cycle_start);

/// The formula rate and the literal schedule's slot accounting disagree by a
/// factor N/(N-1); both are reported rather than silently reconciled.
struct MeshRateReport {
  double formula_hz;      // 1 / (dt (N-1)^2)
  int slots_per_cycle;    // N (N-1)
  double slot_rate_hz;    // 1 / (dt N (N-1))
  bool consistent;        // formula_hz == slot_rate_hz
  std::string note;
};

MeshRateReport mesh_rate_report(int n_nodes, double slot_dt);

}  // namespace meshnav::mesh
