#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sagin/errors.hpp"
#include "sagin/rng.hpp"

namespace sagin {

enum class NodeKind { Uav = 0, LeoSatellite = 1, GroundBaseStation = 2 };

struct Node {
  static constexpr double kEnergyNotTracked = -1.0;

  int id = 0;
  NodeKind kind = NodeKind::Uav;
  double compute_gcps = 0.0;      // gigacycles per second
  double energy_fraction = kEnergyNotTracked;  // battery fraction, UAVs only
  double backlog_gcyc = 0.0;      // queued compute demand
};

// Link classes of the reference topology.  Each class is a shared channel:
// tasks routed over the same class in the same direction contend for it.
enum class LinkClass : int {
  UserToUav = 0,         // device to serving UAV
  UserToGround = 1,      // device to terrestrial base station
  AccessToSatellite = 2, // relay hop up to a LEO satellite
  AccessToGroundEdge = 3 // base station to ground edge server
};
inline constexpr int kLinkClassCount = 4;

struct LinkSpec {
  double rate_mbps = 0.0;
  double delay_ms = 0.0;  // one-way propagation
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Full scenario description.  Defaults reproduce the reference topology:
// five UAVs, three LEO satellites, two ground stations.
struct ScenarioConfig {
  int uav_count = 5;
  int satellite_count = 3;
  int ground_station_count = 2;

  double uav_compute_gcps = 5.0;
  double satellite_compute_gcps = 10.0;
  double ground_compute_gcps = 20.0;

  LinkSpec user_uav{50.0, 1.0};
  LinkSpec user_ground{100.0, 2.0};
  LinkSpec access_satellite{100.0, 15.0};
  LinkSpec access_ground_edge{100.0, 2.0};

  std::vector<double> uav_initial_energy{0.25, 0.80, 0.60, 0.45, 0.90};
  double battery_joules = 200.0;

  double power_min_watts = 0.5;
  double power_max_watts = 2.0;
  double compute_joules_per_gcyc = 0.3;
  double hover_drain_per_step = 0.0005;   // battery fraction, every UAV, every step

  int tasks_per_episode = 50;
  Interval data_in_mb{2.0, 8.0};
  Interval compute_gcyc{1.0, 5.0};
  Interval result_out_mb{10.0, 50.0};
  Interval deadline_ms{2000.0, 2000.0};

  double latency_ref_ms = 1000.0;
  double energy_ref = 0.01;
};

struct Task {
  int id = 0;
  double data_in_mb = 0.0;
  double compute_gcyc = 0.0;
  double result_out_mb = 0.0;
  double deadline_ms = 0.0;
};

// Immutable scenario plus the mutable per-node state the simulator evolves.
// Node ids are dense and ordered UAVs, satellites, ground stations.
struct World {
  std::vector<Node> nodes;
  std::array<LinkSpec, kLinkClassCount> links{};
  ScenarioConfig config;

  int uav_count() const { return config.uav_count; }
  int satellite_count() const { return config.satellite_count; }
  int ground_station_count() const { return config.ground_station_count; }
  int node_count() const { return static_cast<int>(nodes.size()); }

  int first_satellite() const { return config.uav_count; }
  int first_ground_station() const { return config.uav_count + config.satellite_count; }

  bool is_uav(int id) const { return id >= 0 && id < first_satellite(); }
  bool is_satellite(int id) const { return id >= first_satellite() && id < first_ground_station(); }
  bool is_ground_station(int id) const { return id >= first_ground_station() && id < node_count(); }

  const LinkSpec& link(LinkClass c) const { return links[static_cast<int>(c)]; }
};

// Validates the config and lays out the node table.  Throws ConfigError with
// the offending field named.
World build_scenario(const ScenarioConfig& config);

// Draws one episode's task sequence.  Same seed, same config: same tasks.
std::vector<Task> generate_tasks(std::uint64_t seed, const ScenarioConfig& config);

// One entry of the discrete action catalogue: a processing node, how a
// satellite is reached, and a transmit power level.
enum class RelayClass { None = 0, Ground = 1, Uav = 2 };

struct DiscreteAction {
  int processing_node = 0;
  RelayClass relay = RelayClass::None;
  double power_watts = 0.0;
};

// Enumerates the catalogue in canonical order: processing node id major,
// then relay class (ground before UAV), then power level (half before full).
// Satellite entries appear once per relay class actually present in the
// world.  Two power levels: 0.5 * power_max and power_max.
std::vector<DiscreteAction> enumerate_discrete_actions(const World& world);

}  // namespace sagin
