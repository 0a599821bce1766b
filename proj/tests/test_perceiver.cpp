#include <doctest.h>

#include "sagin/perceiver.hpp"
#include "sagin/sim_core.hpp"

using namespace sagin;

namespace {

World world_with(int uavs, int satellites, int grounds) {
  ScenarioConfig config;
  config.uav_count = uavs;
  config.satellite_count = satellites;
  config.ground_station_count = grounds;
  config.uav_initial_energy.assign(static_cast<std::size_t>(uavs), 0.9);
  return build_scenario(config);
}

Telemetry telemetry_for(const World& world, std::initializer_list<double> energies) {
  Telemetry t;
  t.uav_energy = Eigen::VectorXd::Map(std::data(energies),
                                      static_cast<Eigen::Index>(energies.size()));
  t.backlog_gcyc = Eigen::VectorXd::Zero(world.node_count());
  return t;
}

}  // namespace

TEST_CASE("monitor copies environment state without mutating it") {
  EnvState env = reset(build_scenario(ScenarioConfig{}), 5, RewardConfig{});
  env.world.nodes[2].backlog_gcyc = 7.0;
  env.world.nodes[8].backlog_gcyc = 30.0;

  const Telemetry t = monitor(env);
  REQUIRE(t.uav_energy.size() == 5);
  CHECK(t.uav_energy[0] == 0.25);
  CHECK(t.uav_energy[4] == 0.90);
  REQUIRE(t.backlog_gcyc.size() == 10);
  CHECK(t.backlog_gcyc[2] == 7.0);
  CHECK(t.backlog_gcyc[8] == 30.0);
  CHECK(t.step_index == 0);

  // Querying twice gives the same answer and leaves the env untouched.
  const Telemetry u = monitor(env);
  CHECK(u.uav_energy == t.uav_energy);
  CHECK(u.backlog_gcyc == t.backlog_gcyc);
  CHECK(env.world.nodes[2].backlog_gcyc == 7.0);
}

TEST_CASE("energy level thresholds are strict-less comparisons") {
  const Thresholds th;
  const World w2 = world_with(2, 3, 2);
  const World w1 = world_with(1, 3, 2);
  const World w4 = world_with(4, 3, 2);

  CHECK(analyze(telemetry_for(w2, {0.25, 0.8}), th, w2).uav_energy_level ==
        EnergyLevel::Critical);
  CHECK(analyze(telemetry_for(w2, {0.80, 0.9}), th, w2).uav_energy_level ==
        EnergyLevel::Adequate);
  CHECK(analyze(telemetry_for(w1, {0.45}), th, w1).uav_energy_level ==
        EnergyLevel::Constrained);

  // Boundary values sit on the non-alarmed side.
  CHECK(analyze(telemetry_for(w1, {0.30}), th, w1).uav_energy_level ==
        EnergyLevel::Constrained);
  CHECK(analyze(telemetry_for(w1, {0.50}), th, w1).uav_energy_level == EnergyLevel::Adequate);
  CHECK(analyze(telemetry_for(w1, {0.299999}), th, w1).uav_energy_level ==
        EnergyLevel::Critical);

  // The minimum across the fleet decides.
  CHECK(analyze(telemetry_for(w4, {0.9, 0.9, 0.29, 0.9}), th, w4).uav_energy_level ==
        EnergyLevel::Critical);
}

TEST_CASE("satellite and congestion flags") {
  const Thresholds th;
  const World with_sat = world_with(1, 1, 2);
  const World no_sat = world_with(1, 0, 2);

  Telemetry t = telemetry_for(with_sat, {0.9});
  CHECK(analyze(t, th, with_sat).satellite_backup == SatelliteBackup::AvailableHighLatency);

  Telemetry u = telemetry_for(no_sat, {0.9});
  CHECK(analyze(u, th, no_sat).satellite_backup == SatelliteBackup::Unavailable);

  // Ground stations compute at 20 Gcyc/s: 10 Gcyc of backlog is 0.5 s.
  // Mean backlog-seconds must strictly exceed 0.5 to raise the flag.
  const int g0 = no_sat.first_ground_station();
  u.backlog_gcyc[g0] = 10.0;
  u.backlog_gcyc[g0 + 1] = 10.0;
  CHECK(analyze(u, th, no_sat).ground_congestion == GroundCongestion::Low);
  u.backlog_gcyc[g0] = 10.5;
  CHECK(analyze(u, th, no_sat).ground_congestion == GroundCongestion::High);

  // One idle station can dilute the mean below the bound.
  u.backlog_gcyc[g0] = 18.0;
  u.backlog_gcyc[g0 + 1] = 0.0;
  CHECK(analyze(u, th, no_sat).ground_congestion == GroundCongestion::Low);
  u.backlog_gcyc[g0] = 22.0;
  CHECK(analyze(u, th, no_sat).ground_congestion == GroundCongestion::High);
}

TEST_CASE("worlds without UAVs read as adequate") {
  const Thresholds th;
  const World w = world_with(0, 0, 2);
  Telemetry t = telemetry_for(w, {});
  const SemanticState s = analyze(t, th, w);
  CHECK(s.uav_energy_level == EnergyLevel::Adequate);
  CHECK(s.satellite_backup == SatelliteBackup::Unavailable);
  CHECK(s.ground_congestion == GroundCongestion::Low);
}

TEST_CASE("analyze is monotone in fleet energy") {
  const Thresholds th;
  const World w = world_with(3, 1, 2);
  Rng rng(41);
  for (int round = 0; round < 500; ++round) {
    Telemetry lower = telemetry_for(w, {0, 0, 0});
    Telemetry higher = lower;
    for (int i = 0; i < 3; ++i) {
      const double e = rng.uniform(0.0, 1.0);
      lower.uav_energy[i] = e;
      higher.uav_energy[i] = e + rng.uniform(0.0, 1.0 - e);
    }
    const auto a = analyze(lower, th, w);
    const auto b = analyze(higher, th, w);
    CHECK(static_cast<int>(a.uav_energy_level) <= static_cast<int>(b.uav_energy_level));
  }
}

TEST_CASE("analyze tracks the live environment through a step") {
  EnvState env = reset(build_scenario(ScenarioConfig{}), 7, RewardConfig{});
  const Thresholds th;
  // Default fleet minimum is 0.25: Critical from the first snapshot.
  SemanticState s = analyze(monitor(env), th, env.world);
  CHECK(s.uav_energy_level == EnergyLevel::Critical);
  CHECK(s.satellite_backup == SatelliteBackup::AvailableHighLatency);
  CHECK(s.ground_congestion == GroundCongestion::Low);
}

TEST_CASE("custom thresholds shift the bands and are validated") {
  Thresholds th;
  th.critical_below = 0.10;
  th.constrained_below = 0.90;
  validate(th);
  const World w = world_with(1, 1, 1);
  CHECK(analyze(telemetry_for(w, {0.25}), th, w).uav_energy_level ==
        EnergyLevel::Constrained);

  th.critical_below = 0.95;  // must stay below constrained_below
  CHECK_THROWS_AS(validate(th), ConfigError);
  th.critical_below = 0.0;
  CHECK_THROWS_AS(validate(th), ConfigError);
  th.critical_below = 0.30;
  th.congestion_backlog_seconds = -1.0;
  CHECK_THROWS_AS(validate(th), ConfigError);
}

TEST_CASE("summaries for alarmed states use the fixed phrasing") {
  SemanticState s;
  s.uav_energy_level = EnergyLevel::Constrained;
  s.satellite_backup = SatelliteBackup::AvailableHighLatency;
  s.ground_congestion = GroundCongestion::Low;
  CHECK(render_summary(s) ==
        "UAV cluster energy-constrained with satellite backup available but high latency");

  s.uav_energy_level = EnergyLevel::Critical;
  s.ground_congestion = GroundCongestion::High;
  CHECK(render_summary(s) ==
        "UAV cluster energy-constrained with satellite backup available but high latency");
}

TEST_CASE("summaries for calm and offline-backup states") {
  SemanticState s;
  s.uav_energy_level = EnergyLevel::Adequate;
  s.satellite_backup = SatelliteBackup::AvailableHighLatency;
  s.ground_congestion = GroundCongestion::Low;
  CHECK(render_summary(s) == "UAV cluster energy adequate; satellite backup available");

  s.satellite_backup = SatelliteBackup::Unavailable;
  CHECK(render_summary(s) == "UAV cluster energy adequate; no satellite backup");

  s.uav_energy_level = EnergyLevel::Critical;
  s.ground_congestion = GroundCongestion::High;
  CHECK(render_summary(s) ==
        "UAV cluster energy critical; no satellite backup; ground tier congested");

  s.uav_energy_level = EnergyLevel::Adequate;
  CHECK(render_summary(s) ==
        "UAV cluster energy adequate; no satellite backup; ground tier congested");
}
