#pragma once

#include <Eigen/Dense>
#include <string>

#include "sagin/sim_core.hpp"

namespace sagin {

// Raw numbers the Monitor phase lifts out of the environment, verbatim.
struct Telemetry {
  Eigen::VectorXd uav_energy;   // battery fractions, canonical UAV order
  Eigen::VectorXd backlog_gcyc; // all nodes, canonical order
  int step_index = 0;
  double recent_mean_latency_ms = 0.0;
};

// Label boundaries for the Analyze phase.  Comparisons are strict-less, so
// an energy of exactly 0.50 reads Adequate.
struct Thresholds {
  double critical_below = 0.30;
  double constrained_below = 0.50;
  double congestion_backlog_seconds = 0.5;
};

void validate(const Thresholds& thresholds);

// Snapshot without mutation.
Telemetry monitor(const EnvState& env);

// Maps telemetry to the enumerated semantic labels: min UAV energy against
// the thresholds, satellite presence, mean ground backlog against the
// congestion bound.  Total: every telemetry yields exactly one state.  A
// world with no UAVs reads Adequate (vacuous minimum).
SemanticState analyze(const Telemetry& t, const Thresholds& thresholds, const World& world);

// Deterministic text per label combination, used verbatim in episode logs.
std::string render_summary(const SemanticState& s);

}  // namespace sagin
