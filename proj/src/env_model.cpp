#include "sagin/env_model.hpp"

#include <string>

namespace sagin {
namespace {

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw ConfigError("scenario config: " + field + " " + why);
}

void validate(const ScenarioConfig& c) {
  require(c.uav_count >= 0, "uav_count", "must be non-negative");
  require(c.satellite_count >= 0, "satellite_count", "must be non-negative");
  require(c.ground_station_count >= 0, "ground_station_count", "must be non-negative");
  require(static_cast<int>(c.uav_initial_energy.size()) == c.uav_count,
          "uav_initial_energy", "length must equal uav_count");
  for (double e : c.uav_initial_energy)
    require(e >= 0.0 && e <= 1.0, "uav_initial_energy", "entries must lie in [0, 1]");

  require(c.uav_compute_gcps > 0.0, "uav_compute_gcps", "must be positive");
  require(c.satellite_compute_gcps > 0.0, "satellite_compute_gcps", "must be positive");
  require(c.ground_compute_gcps > 0.0, "ground_compute_gcps", "must be positive");

  const struct { const char* name; const LinkSpec& spec; } links[] = {
      {"user_uav", c.user_uav},
      {"user_ground", c.user_ground},
      {"access_satellite", c.access_satellite},
      {"access_ground_edge", c.access_ground_edge},
  };
  for (const auto& l : links) {
    require(l.spec.rate_mbps > 0.0, l.name, "rate must be positive");
    require(l.spec.delay_ms >= 0.0, l.name, "delay must be non-negative");
  }

  require(c.battery_joules > 0.0, "battery_joules", "must be positive");
  require(c.power_min_watts > 0.0, "power_min_watts", "must be positive");
  require(c.power_max_watts >= c.power_min_watts, "power_max_watts",
          "must be at least power_min_watts");
  require(c.compute_joules_per_gcyc >= 0.0, "compute_joules_per_gcyc", "must be non-negative");
  require(c.hover_drain_per_step >= 0.0, "hover_drain_per_step", "must be non-negative");

  require(c.tasks_per_episode >= 0, "tasks_per_episode", "must be non-negative");
  const struct { const char* name; const Interval& iv; } ranges[] = {
      {"data_in_mb", c.data_in_mb},
      {"compute_gcyc", c.compute_gcyc},
      {"result_out_mb", c.result_out_mb},
      {"deadline_ms", c.deadline_ms},
  };
  for (const auto& r : ranges) {
    require(r.iv.lo > 0.0, r.name, "lower bound must be positive");
    require(r.iv.hi >= r.iv.lo, r.name, "upper bound must be at least the lower bound");
  }

  require(c.latency_ref_ms > 0.0, "latency_ref_ms", "must be positive");
  require(c.energy_ref > 0.0, "energy_ref", "must be positive");
}

}  // namespace

World build_scenario(const ScenarioConfig& config) {
  validate(config);

  World world;
  world.config = config;
  world.links[static_cast<int>(LinkClass::UserToUav)] = config.user_uav;
  world.links[static_cast<int>(LinkClass::UserToGround)] = config.user_ground;
  world.links[static_cast<int>(LinkClass::AccessToSatellite)] = config.access_satellite;
  world.links[static_cast<int>(LinkClass::AccessToGroundEdge)] = config.access_ground_edge;

  world.nodes.reserve(config.uav_count + config.satellite_count + config.ground_station_count);
  int id = 0;
  for (int i = 0; i < config.uav_count; ++i, ++id)
    world.nodes.push_back({id, NodeKind::Uav, config.uav_compute_gcps,
                           config.uav_initial_energy[i], 0.0});
  for (int i = 0; i < config.satellite_count; ++i, ++id)
    world.nodes.push_back({id, NodeKind::LeoSatellite, config.satellite_compute_gcps,
                           Node::kEnergyNotTracked, 0.0});
  for (int i = 0; i < config.ground_station_count; ++i, ++id)
    world.nodes.push_back({id, NodeKind::GroundBaseStation, config.ground_compute_gcps,
                           Node::kEnergyNotTracked, 0.0});
  return world;
}

std::vector<Task> generate_tasks(std::uint64_t seed, const ScenarioConfig& config) {
  Rng rng(seed);
  std::vector<Task> tasks;
  tasks.reserve(config.tasks_per_episode);
  for (int i = 0; i < config.tasks_per_episode; ++i) {
    Task t;
    t.id = i;
    t.data_in_mb = rng.uniform(config.data_in_mb.lo, config.data_in_mb.hi);
    t.compute_gcyc = rng.uniform(config.compute_gcyc.lo, config.compute_gcyc.hi);
    t.result_out_mb = rng.uniform(config.result_out_mb.lo, config.result_out_mb.hi);
    t.deadline_ms = rng.uniform(config.deadline_ms.lo, config.deadline_ms.hi);
    tasks.push_back(t);
  }
  return tasks;
}

std::vector<DiscreteAction> enumerate_discrete_actions(const World& world) {
  const double full = world.config.power_max_watts;
  const double half = 0.5 * full;
  const double levels[2] = {half, full};

  std::vector<DiscreteAction> catalogue;
  for (const Node& node : world.nodes) {
    if (node.kind == NodeKind::LeoSatellite) {
      // A satellite needs a relay; enumerate one entry per relay class that
      // exists in this world.
      if (world.ground_station_count() > 0)
        for (double p : levels) catalogue.push_back({node.id, RelayClass::Ground, p});
      if (world.uav_count() > 0)
        for (double p : levels) catalogue.push_back({node.id, RelayClass::Uav, p});
    } else {
      for (double p : levels) catalogue.push_back({node.id, RelayClass::None, p});
    }
  }
  return catalogue;
}

}  // namespace sagin
