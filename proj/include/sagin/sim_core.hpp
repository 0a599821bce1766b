#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "sagin/allocator.hpp"
#include "sagin/env_model.hpp"
#include "sagin/errors.hpp"
#include "sagin/reward.hpp"
#include "sagin/rng.hpp"
#include "sagin/semantic.hpp"

namespace sagin {

// A UAV below this battery fraction is masked out, both as a processing node
// and as a satellite relay.
inline constexpr double kMinUavEnergyFraction = 0.05;

// Where a task runs, how it is reached, and at what transmit power.
// Invariants: UAV or ground-station processing serves as its own access
// node; satellite processing is accessed through a relay (UAV or ground
// station); power lies in [power_min, power_max].
struct PlacementDecision {
  int processing_node = 0;
  int access_node = 0;
  double power_watts = 0.0;
};

// The mutable environment: one episode's world snapshot, its task sequence,
// and the reward configuration in force.  Mutated only by step().
struct EnvState {
  World world;
  std::vector<Task> tasks;
  int step_index = 0;
  RewardConfig reward;
  Rng rng{0};

  // Short latency history backing the perceiver's windowed telemetry.
  std::array<double, 10> recent_latency_ms{};
  int recent_latency_count = 0;

  bool done() const { return step_index >= static_cast<int>(tasks.size()); }
  const Task& current_task() const { return tasks.at(step_index); }
  double recent_mean_latency_ms() const;
};

struct RewardTerms {
  double latency_norm = 0.0;
  double energy_norm = 0.0;
  double lambda = 0.0;
};

struct StepOutcome {
  double latency_ms = 0.0;
  double uav_energy_spent = 0.0;  // battery fraction charged to the reward
  double reward = 0.0;
  RewardTerms terms;
  bool deadline_met = true;
};

// Fresh episode state: new task draw, zero backlogs, batteries back to the
// configured levels.
EnvState reset(const World& world, std::uint64_t seed, const RewardConfig& reward_config);

// Expands a decision into concrete legs and demands under the canonical
// routing rules (satellites reached via their relay; results retrace the
// uplink in reverse).
RoutedPlan route_decision(const World& world, const PlacementDecision& decision,
                          const Task& task);

// Maps a raw policy vector (node scores, relay preference, power) to a
// feasible placement.  Deterministic; throws NoFeasibleNode when every node
// is masked.
PlacementDecision decode_continuous(const Eigen::VectorXd& action, const EnvState& env);

// Maps a catalogue index to a placement, scanning upward cyclically past
// infeasible entries.
PlacementDecision decode_discrete(int index, const EnvState& env);

// Whether a catalogue entry can currently serve: its UAV (as processor or
// required relay class) must be above the energy floor.
bool discrete_entry_feasible(const DiscreteAction& entry, const World& world);

// Resolves a feasible catalogue entry to a concrete placement, picking the
// relay by the canonical rules (least-backlog ground station, or the
// highest-energy usable UAV).
PlacementDecision materialize_discrete(const DiscreteAction& entry, const World& world);

// Latency the current task would see under this decision, without touching
// the environment.
double preview_latency(const EnvState& env, const PlacementDecision& decision);

// Advances the environment by one task: routes, allocates, charges
// batteries, grows the chosen backlog, scores the step.
StepOutcome step(EnvState& env, const PlacementDecision& decision);

// Fixed-layout observation: current task fields, UAV batteries, normalized
// backlogs, one-hot energy label, normalized lambda.  All entries in [0,1].
Eigen::VectorXd observe(const EnvState& env, const SemanticState& semantic);

// Layout size for a given world: 3 task entries + one battery per UAV + one
// backlog per node + 3 one-hot entries + lambda.
int observation_size(const World& world);

// Raw policy vector length expected by decode_continuous.
int continuous_action_size(const World& world);

}  // namespace sagin
