#include "sagin/perceiver.hpp"

namespace sagin {

void validate(const Thresholds& thresholds) {
  if (!(thresholds.critical_below > 0.0 && thresholds.critical_below < thresholds.constrained_below &&
        thresholds.constrained_below < 1.0))
    throw ConfigError("thresholds: need 0 < critical_below < constrained_below < 1");
  if (!(thresholds.congestion_backlog_seconds >= 0.0))
    throw ConfigError("thresholds: congestion_backlog_seconds must be non-negative");
}

Telemetry monitor(const EnvState& env) {
  const World& world = env.world;
  Telemetry t;
  t.uav_energy.resize(world.uav_count());
  for (int u = 0; u < world.first_satellite(); ++u)
    t.uav_energy[u] = world.nodes[u].energy_fraction;
  t.backlog_gcyc.resize(world.node_count());
  for (int i = 0; i < world.node_count(); ++i)
    t.backlog_gcyc[i] = world.nodes[i].backlog_gcyc;
  t.step_index = env.step_index;
  t.recent_mean_latency_ms = env.recent_mean_latency_ms();
  return t;
}

SemanticState analyze(const Telemetry& t, const Thresholds& thresholds, const World& world) {
  SemanticState s;

  if (t.uav_energy.size() == 0) {
    s.uav_energy_level = EnergyLevel::Adequate;  // vacuous minimum
  } else {
    const double lowest = t.uav_energy.minCoeff();
    if (lowest < thresholds.critical_below)
      s.uav_energy_level = EnergyLevel::Critical;
    else if (lowest < thresholds.constrained_below)
      s.uav_energy_level = EnergyLevel::Constrained;
    else
      s.uav_energy_level = EnergyLevel::Adequate;
  }

  s.satellite_backup = world.satellite_count() > 0 ? SatelliteBackup::AvailableHighLatency
                                                   : SatelliteBackup::Unavailable;

  double load_seconds = 0.0;
  int ground = 0;
  for (int g = world.first_ground_station(); g < world.node_count(); ++g, ++ground)
    if (g < t.backlog_gcyc.size())
      load_seconds += t.backlog_gcyc[g] / world.nodes[g].compute_gcps;
  s.ground_congestion = ground > 0 && load_seconds / ground > thresholds.congestion_backlog_seconds
                            ? GroundCongestion::High
                            : GroundCongestion::Low;
  return s;
}

std::string render_summary(const SemanticState& s) {
  const bool satellite = s.satellite_backup == SatelliteBackup::AvailableHighLatency;
  const bool congested = s.ground_congestion == GroundCongestion::High;

  // The constrained-or-critical satellite cells reproduce the operator-facing
  // wording exactly; downstream logs golden-test against it.
  if (s.uav_energy_level != EnergyLevel::Adequate && satellite)
    return "UAV cluster energy-constrained with satellite backup available but high latency";

  std::string text = "UAV cluster energy ";
  switch (s.uav_energy_level) {
    case EnergyLevel::Adequate: text += "adequate"; break;
    case EnergyLevel::Constrained: text += "constrained"; break;
    case EnergyLevel::Critical: text += "critical"; break;
  }
  text += satellite ? "; satellite backup available" : "; no satellite backup";
  if (congested) text += "; ground tier congested";
  return text;
}

}  // namespace sagin
