#pragma once

namespace sagin {

// Per-episode key performance indicators, the currency between the run
// harness and the adaptive intent learner.
struct KpiEntry {
  double mean_latency_ms = 0.0;
  double min_uav_end_energy = 0.0;  // lowest UAV battery fraction at episode end
  double episode_reward = 0.0;
};

}  // namespace sagin
