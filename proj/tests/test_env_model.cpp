#include <doctest.h>

#include <set>

#include "sagin/env_model.hpp"

using namespace sagin;

TEST_CASE("default scenario lays out ten nodes in canonical order") {
  const World world = build_scenario(ScenarioConfig{});
  REQUIRE(world.node_count() == 10);

  for (int id = 0; id < 5; ++id) {
    CHECK(world.nodes[id].kind == NodeKind::Uav);
    CHECK(world.nodes[id].compute_gcps == 5.0);
  }
  for (int id = 5; id < 8; ++id) {
    CHECK(world.nodes[id].kind == NodeKind::LeoSatellite);
    CHECK(world.nodes[id].compute_gcps == 10.0);
    CHECK(world.nodes[id].energy_fraction == Node::kEnergyNotTracked);
  }
  for (int id = 8; id < 10; ++id) {
    CHECK(world.nodes[id].kind == NodeKind::GroundBaseStation);
    CHECK(world.nodes[id].compute_gcps == 20.0);
  }

  CHECK(world.nodes[0].energy_fraction == 0.25);
  CHECK(world.nodes[1].energy_fraction == 0.80);
  CHECK(world.nodes[4].energy_fraction == 0.90);
  for (const Node& node : world.nodes) CHECK(node.backlog_gcyc == 0.0);

  CHECK(world.link(LinkClass::UserToUav).rate_mbps == 50.0);
  CHECK(world.link(LinkClass::UserToUav).delay_ms == 1.0);
  CHECK(world.link(LinkClass::AccessToSatellite).delay_ms == 15.0);
}

TEST_CASE("scenario without UAVs is a valid five-node world") {
  ScenarioConfig config;
  config.uav_count = 0;
  config.uav_initial_energy.clear();
  const World world = build_scenario(config);
  CHECK(world.node_count() == 5);
  CHECK(world.first_satellite() == 0);
  CHECK(world.is_satellite(0));
  CHECK(world.is_ground_station(4));
}

TEST_CASE("config validation names the offending field") {
  ScenarioConfig config;
  config.uav_initial_energy.pop_back();
  CHECK_THROWS_WITH_AS(build_scenario(config),
                       doctest::Contains("uav_initial_energy"), ConfigError);

  config = ScenarioConfig{};
  config.battery_joules = 0.0;
  CHECK_THROWS_WITH_AS(build_scenario(config), doctest::Contains("battery_joules"), ConfigError);

  config = ScenarioConfig{};
  config.power_max_watts = 0.1;  // below power_min
  CHECK_THROWS_WITH_AS(build_scenario(config), doctest::Contains("power_max_watts"), ConfigError);

  config = ScenarioConfig{};
  config.data_in_mb = {8.0, 2.0};  // inverted range
  CHECK_THROWS_WITH_AS(build_scenario(config), doctest::Contains("data_in_mb"), ConfigError);
}

TEST_CASE("task generation is seeded and respects the configured ranges") {
  const ScenarioConfig config;
  const std::vector<Task> a = generate_tasks(7, config);
  const std::vector<Task> b = generate_tasks(7, config);
  const std::vector<Task> c = generate_tasks(8, config);

  REQUIRE(a.size() == 50);
  REQUIRE(b.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].data_in_mb == b[i].data_in_mb);
    CHECK(a[i].compute_gcyc == b[i].compute_gcyc);
    CHECK(a[i].result_out_mb == b[i].result_out_mb);
  }

  bool any_differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].data_in_mb != c[i].data_in_mb) any_differs = true;
  CHECK(any_differs);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (const Task& t : generate_tasks(seed, config)) {
      CHECK(t.data_in_mb >= 2.0);
      CHECK(t.data_in_mb <= 8.0);
      CHECK(t.compute_gcyc >= 1.0);
      CHECK(t.compute_gcyc <= 5.0);
      CHECK(t.result_out_mb >= 10.0);
      CHECK(t.result_out_mb <= 50.0);
      CHECK(t.deadline_ms == 2000.0);
    }
  }
}

TEST_CASE("task ids are sequential") {
  const std::vector<Task> tasks = generate_tasks(3, ScenarioConfig{});
  for (int i = 0; i < static_cast<int>(tasks.size()); ++i) CHECK(tasks[i].id == i);
}

TEST_CASE("discrete catalogue enumerates 26 actions for the default world") {
  const World world = build_scenario(ScenarioConfig{});
  const std::vector<DiscreteAction> catalogue = enumerate_discrete_actions(world);

  // 5 UAVs x 2 powers + 3 satellites x 2 relay classes x 2 powers + 2 ground
  // stations x 2 powers.
  REQUIRE(catalogue.size() == 26);

  CHECK(catalogue[0].processing_node == 0);
  CHECK(catalogue[0].relay == RelayClass::None);
  CHECK(catalogue[0].power_watts == 1.0);
  CHECK(catalogue[1].power_watts == 2.0);

  // Satellite block: ground relay entries precede UAV relay entries.
  CHECK(catalogue[10].processing_node == 5);
  CHECK(catalogue[10].relay == RelayClass::Ground);
  CHECK(catalogue[10].power_watts == 1.0);
  CHECK(catalogue[12].relay == RelayClass::Uav);
  CHECK(catalogue[22].processing_node == 8);
  CHECK(catalogue[25].processing_node == 9);
  CHECK(catalogue[25].power_watts == 2.0);

  // Ordering is non-decreasing in processing id.
  for (std::size_t i = 1; i < catalogue.size(); ++i)
    CHECK(catalogue[i].processing_node >= catalogue[i - 1].processing_node);
}

TEST_CASE("catalogue adapts to degenerate worlds") {
  ScenarioConfig config;
  config.uav_count = 1;
  config.uav_initial_energy = {0.5};
  config.satellite_count = 0;
  config.ground_station_count = 0;
  CHECK(enumerate_discrete_actions(build_scenario(config)).size() == 2);

  config.uav_count = 0;
  config.uav_initial_energy.clear();
  CHECK(enumerate_discrete_actions(build_scenario(config)).empty());

  // Satellites without ground stations offer only the UAV relay class.
  config = ScenarioConfig{};
  config.ground_station_count = 0;
  const auto catalogue = enumerate_discrete_actions(build_scenario(config));
  CHECK(catalogue.size() == 5 * 2 + 3 * 2);
  for (const DiscreteAction& entry : catalogue)
    CHECK(entry.relay != RelayClass::Ground);
}
