#include "sagin/sim_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sagin {
namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

bool uav_feasible(const Node& node) {
  return node.energy_fraction >= kMinUavEnergyFraction;
}

// A satellite can serve only if some first hop exists for it.
bool satellite_feasible(const World& world) {
  if (world.ground_station_count() > 0) return true;
  for (int u = 0; u < world.first_satellite(); ++u)
    if (uav_feasible(world.nodes[u])) return true;
  return false;
}

bool node_feasible(const World& world, int id) {
  const Node& node = world.nodes[id];
  switch (node.kind) {
    case NodeKind::Uav: return uav_feasible(node);
    case NodeKind::LeoSatellite: return satellite_feasible(world);
    case NodeKind::GroundBaseStation: return true;
  }
  return false;
}

int ground_relay(const World& world) {
  int best = -1;
  for (int g = world.first_ground_station(); g < world.node_count(); ++g)
    if (best < 0 || world.nodes[g].backlog_gcyc < world.nodes[best].backlog_gcyc) best = g;
  return best;
}

int uav_relay(const World& world) {
  int best = -1;
  for (int u = 0; u < world.first_satellite(); ++u) {
    if (!uav_feasible(world.nodes[u])) continue;
    if (best < 0 || world.nodes[u].energy_fraction > world.nodes[best].energy_fraction) best = u;
  }
  return best;
}

// Relay selection shared by both decoders: the preference picks the relay
// class, the world state picks the member, and a missing class falls back to
// the other one.
int pick_relay(const World& world, bool prefer_ground) {
  const int ground = ground_relay(world);
  const int uav = uav_relay(world);
  const int primary = prefer_ground ? ground : uav;
  const int fallback = prefer_ground ? uav : ground;
  const int relay = primary >= 0 ? primary : fallback;
  if (relay < 0) throw NoFeasibleNode("satellite placement with no usable relay");
  return relay;
}

void check_decision(const World& world, const PlacementDecision& d) {
  if (d.processing_node < 0 || d.processing_node >= world.node_count())
    throw std::invalid_argument("placement: processing node out of range");
  if (d.access_node < 0 || d.access_node >= world.node_count())
    throw std::invalid_argument("placement: access node out of range");
  const NodeKind kind = world.nodes[d.processing_node].kind;
  if (kind == NodeKind::LeoSatellite) {
    if (world.nodes[d.access_node].kind == NodeKind::LeoSatellite)
      throw std::invalid_argument("placement: satellite access must be a relay node");
  } else if (d.access_node != d.processing_node) {
    throw std::invalid_argument("placement: non-satellite processing is its own access node");
  }
  if (d.power_watts < world.config.power_min_watts - 1e-12 ||
      d.power_watts > world.config.power_max_watts + 1e-12)
    throw std::invalid_argument("placement: power outside configured bounds");
}

}  // namespace

double EnvState::recent_mean_latency_ms() const {
  if (recent_latency_count == 0) return 0.0;
  const int n = std::min<int>(recent_latency_count, recent_latency_ms.size());
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += recent_latency_ms[i];
  return sum / n;
}

EnvState reset(const World& world, std::uint64_t seed, const RewardConfig& reward_config) {
  EnvState env;
  env.world = world;
  for (Node& node : env.world.nodes) node.backlog_gcyc = 0.0;
  for (int u = 0; u < env.world.first_satellite(); ++u)
    env.world.nodes[u].energy_fraction = world.config.uav_initial_energy[u];
  env.tasks = generate_tasks(seed, world.config);
  env.step_index = 0;
  env.reward = reward_config;
  env.rng = Rng(mix_seed(seed, 0x51a7eULL));
  return env;
}

RoutedPlan route_decision(const World& world, const PlacementDecision& decision,
                          const Task& task) {
  check_decision(world, decision);

  RoutedPlan plan;
  plan.task_id = task.id;
  plan.processing_node = decision.processing_node;
  plan.waiting_gcyc = world.nodes[decision.processing_node].backlog_gcyc;
  plan.compute_gcyc = task.compute_gcyc;
  plan.power_watts = decision.power_watts;

  const Node& access = world.nodes[decision.access_node];
  const bool access_is_uav = access.kind == NodeKind::Uav;
  const LinkClass access_link = access_is_uav ? LinkClass::UserToUav : LinkClass::UserToGround;
  const int access_uav = access_is_uav ? access.id : -1;

  plan.uplink.push_back({access_link, false, task.data_in_mb, access_uav});
  if (decision.processing_node != decision.access_node) {
    plan.uplink.push_back({LinkClass::AccessToSatellite, false, task.data_in_mb, access_uav});
    plan.downlink.push_back({LinkClass::AccessToSatellite, true, task.result_out_mb, access_uav});
  }
  plan.downlink.push_back({access_link, true, task.result_out_mb, access_uav});
  return plan;
}

PlacementDecision decode_continuous(const Eigen::VectorXd& action, const EnvState& env) {
  const World& world = env.world;
  const int n = world.node_count();
  if (action.size() != n + 2)
    throw std::invalid_argument("decode_continuous: expected action length " +
                                std::to_string(n + 2) + ", got " +
                                std::to_string(action.size()));

  int best = -1;
  for (int id = 0; id < n; ++id) {
    if (!node_feasible(world, id)) continue;
    const double score = std::clamp(action[id], -1.0, 1.0);
    if (best < 0 || score > std::clamp(action[best], -1.0, 1.0)) best = id;
  }
  if (best < 0)
    throw NoFeasibleNode("decode_continuous: every node masked at step " +
                         std::to_string(env.step_index));

  PlacementDecision decision;
  decision.processing_node = best;
  decision.access_node = best;
  if (world.nodes[best].kind == NodeKind::LeoSatellite)
    decision.access_node = pick_relay(world, std::clamp(action[n], -1.0, 1.0) >= 0.0);

  const double u = std::clamp(action[n + 1], -1.0, 1.0);
  const double p_min = world.config.power_min_watts;
  const double p_max = world.config.power_max_watts;
  decision.power_watts = p_min + (u + 1.0) / 2.0 * (p_max - p_min);
  return decision;
}

bool discrete_entry_feasible(const DiscreteAction& entry, const World& world) {
  const Node& node = world.nodes[entry.processing_node];
  if (node.kind == NodeKind::Uav) return uav_feasible(node);
  if (node.kind == NodeKind::GroundBaseStation) return true;
  if (entry.relay == RelayClass::Ground) return world.ground_station_count() > 0;
  return uav_relay(world) >= 0;
}

PlacementDecision materialize_discrete(const DiscreteAction& entry, const World& world) {
  PlacementDecision decision;
  decision.processing_node = entry.processing_node;
  decision.access_node = entry.processing_node;
  decision.power_watts = entry.power_watts;
  if (world.nodes[entry.processing_node].kind == NodeKind::LeoSatellite)
    decision.access_node = pick_relay(world, entry.relay == RelayClass::Ground);
  return decision;
}

PlacementDecision decode_discrete(int index, const EnvState& env) {
  const World& world = env.world;
  const std::vector<DiscreteAction> catalogue = enumerate_discrete_actions(world);
  const int size = static_cast<int>(catalogue.size());
  if (index < 0 || index >= size)
    throw std::out_of_range("decode_discrete: index " + std::to_string(index) +
                            " outside catalogue of " + std::to_string(size));

  for (int offset = 0; offset < size; ++offset) {
    const int candidate = (index + offset) % size;
    if (discrete_entry_feasible(catalogue[candidate], world))
      return materialize_discrete(catalogue[candidate], world);
  }
  throw NoFeasibleNode("decode_discrete: catalogue fully masked at step " +
                       std::to_string(env.step_index));
}

double preview_latency(const EnvState& env, const PlacementDecision& decision) {
  const RoutedPlan plan = route_decision(env.world, decision, env.current_task());
  const Allocation allocation = allocate({{plan}}, env.world);
  return plan_latency_ms(allocation.tasks.front());
}

StepOutcome step(EnvState& env, const PlacementDecision& decision) {
  World& world = env.world;
  const Task task = env.current_task();
  const RoutedPlan plan = route_decision(world, decision, task);
  const Allocation allocation = allocate({{plan}}, world);
  const Allocation::TaskShare& share = allocation.tasks.front();

  StepOutcome outcome;
  outcome.latency_ms = plan_latency_ms(share);
  outcome.deadline_met = certify_qos(allocation, {task}).front().second;

  // Transmit time is charged to the one UAV on the route (as endpoint of its
  // access legs, or as relay carrying all four); compute energy applies only
  // when the task runs on the UAV itself.
  double uav_seconds = 0.0;
  int battery_uav = -1;
  for (const auto* legs : {&share.uplink, &share.downlink})
    for (const Allocation::LegShare& leg : *legs)
      if (leg.uav_endpoint >= 0) {
        uav_seconds += leg.megabits / leg.rate_mbps;
        battery_uav = leg.uav_endpoint;
      }
  double joules = decision.power_watts * uav_seconds;
  if (world.nodes[decision.processing_node].kind == NodeKind::Uav) {
    battery_uav = decision.processing_node;
    joules += world.config.compute_joules_per_gcyc * task.compute_gcyc;
  }
  outcome.uav_energy_spent = joules / world.config.battery_joules;

  if (battery_uav >= 0) {
    double& fraction = world.nodes[battery_uav].energy_fraction;
    fraction = std::max(0.0, fraction - outcome.uav_energy_spent);
  }
  for (int u = 0; u < world.first_satellite(); ++u) {
    double& fraction = world.nodes[u].energy_fraction;
    fraction = std::max(0.0, fraction - world.config.hover_drain_per_step);
  }

  world.nodes[decision.processing_node].backlog_gcyc += task.compute_gcyc;

  outcome.terms.latency_norm = outcome.latency_ms / env.reward.latency_ref_ms;
  outcome.terms.energy_norm = outcome.uav_energy_spent / env.reward.energy_ref;
  outcome.terms.lambda = env.reward.lambda;
  outcome.reward = -(outcome.terms.latency_norm + outcome.terms.lambda * outcome.terms.energy_norm);

  env.recent_latency_ms[env.step_index % env.recent_latency_ms.size()] = outcome.latency_ms;
  env.recent_latency_count = std::min<int>(env.recent_latency_count + 1,
                                           env.recent_latency_ms.size());
  env.step_index += 1;
  return outcome;
}

int observation_size(const World& world) {
  return 3 + world.uav_count() + world.node_count() + 3 + 1;
}

int continuous_action_size(const World& world) { return world.node_count() + 2; }

Eigen::VectorXd observe(const EnvState& env, const SemanticState& semantic) {
  const World& world = env.world;
  const ScenarioConfig& cfg = world.config;
  Eigen::VectorXd obs = Eigen::VectorXd::Zero(observation_size(world));

  auto normalized = [](double x, const Interval& range) {
    const double span = range.hi - range.lo;
    return span > 0.0 ? clamp01((x - range.lo) / span) : 0.0;
  };
  if (!env.done()) {
    const Task& task = env.current_task();
    obs[0] = normalized(task.data_in_mb, cfg.data_in_mb);
    obs[1] = normalized(task.compute_gcyc, cfg.compute_gcyc);
    obs[2] = normalized(task.result_out_mb, cfg.result_out_mb);
  }

  int at = 3;
  for (int u = 0; u < world.first_satellite(); ++u)
    obs[at++] = clamp01(world.nodes[u].energy_fraction);
  for (const Node& node : world.nodes)
    obs[at++] = clamp01(node.backlog_gcyc / (node.compute_gcps * 1.0));
  obs[at + static_cast<int>(semantic.uav_energy_level)] = 1.0;
  at += 3;
  obs[at] = clamp01(env.reward.lambda / env.reward.lambda_max);
  return obs;
}

}  // namespace sagin
