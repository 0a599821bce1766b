#include "sagin/config.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

namespace sagin {
namespace {

using nlohmann::json;

[[noreturn]] void unknown_key(const std::string& section, const std::string& key) {
  throw ConfigError("config: unknown key " + section + "." + key);
}

double as_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ConfigError("config: " + where + " must be a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ConfigError("config: " + where + " must be an integer");
  return value.get<int>();
}

std::string as_string(const json& value, const std::string& where) {
  if (!value.is_string()) throw ConfigError("config: " + where + " must be a string");
  return value.get<std::string>();
}

// Links and task intervals are [a, b] pairs; links read rate then delay.
LinkSpec as_link(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2)
    throw ConfigError("config: " + where + " must be [rate_mbps, delay_ms]");
  return LinkSpec{as_number(value[0], where), as_number(value[1], where)};
}

Interval as_interval(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2)
    throw ConfigError("config: " + where + " must be [lo, hi]");
  return Interval{as_number(value[0], where), as_number(value[1], where)};
}

void parse_scenario(const json& section, ScenarioConfig& s) {
  for (const auto& [key, value] : section.items()) {
    const std::string where = "scenario." + key;
    if (key == "uav_count") s.uav_count = as_int(value, where);
    else if (key == "satellite_count") s.satellite_count = as_int(value, where);
    else if (key == "ground_station_count") s.ground_station_count = as_int(value, where);
    else if (key == "uav_compute_gcps") s.uav_compute_gcps = as_number(value, where);
    else if (key == "satellite_compute_gcps") s.satellite_compute_gcps = as_number(value, where);
    else if (key == "ground_compute_gcps") s.ground_compute_gcps = as_number(value, where);
    else if (key == "user_uav") s.user_uav = as_link(value, where);
    else if (key == "user_ground") s.user_ground = as_link(value, where);
    else if (key == "access_satellite") s.access_satellite = as_link(value, where);
    else if (key == "access_ground_edge") s.access_ground_edge = as_link(value, where);
    else if (key == "uav_initial_energy") {
      if (!value.is_array()) throw ConfigError("config: " + where + " must be an array");
      s.uav_initial_energy.clear();
      for (const auto& entry : value) s.uav_initial_energy.push_back(as_number(entry, where));
    } else if (key == "battery_joules") s.battery_joules = as_number(value, where);
    else if (key == "power_min_watts") s.power_min_watts = as_number(value, where);
    else if (key == "power_max_watts") s.power_max_watts = as_number(value, where);
    else if (key == "compute_joules_per_gcyc") s.compute_joules_per_gcyc = as_number(value, where);
    else if (key == "hover_drain_per_step") s.hover_drain_per_step = as_number(value, where);
    else if (key == "tasks_per_episode") s.tasks_per_episode = as_int(value, where);
    else if (key == "data_in_mb") s.data_in_mb = as_interval(value, where);
    else if (key == "compute_gcyc") s.compute_gcyc = as_interval(value, where);
    else if (key == "result_out_mb") s.result_out_mb = as_interval(value, where);
    else if (key == "deadline_ms") s.deadline_ms = as_interval(value, where);
    else if (key == "latency_ref_ms") s.latency_ref_ms = as_number(value, where);
    else if (key == "energy_ref") s.energy_ref = as_number(value, where);
    else unknown_key("scenario", key);
  }
}

void parse_intent(const json& section, Intent& intent) {
  for (const auto& [key, value] : section.items()) {
    const std::string where = "intent." + key;
    if (key == "target_latency_ms") intent.target_latency_ms = as_number(value, where);
    else if (key == "uav_energy_floor") intent.uav_energy_floor = as_number(value, where);
    else if (key == "objective_note") intent.objective_note = as_string(value, where);
    else unknown_key("intent", key);
  }
}

void parse_shaping(const json& section, ShapingRuleTable& table) {
  for (const auto& [key, value] : section.items()) {
    const std::string where = "shaping." + key;
    if (key == "multiplier_adequate") table.multiplier_adequate = as_number(value, where);
    else if (key == "multiplier_constrained") table.multiplier_constrained = as_number(value, where);
    else if (key == "multiplier_critical") table.multiplier_critical = as_number(value, where);
    else if (key == "lambda_base") table.lambda_base = as_number(value, where);
    else if (key == "lambda_min") table.lambda_min = as_number(value, where);
    else if (key == "lambda_max") table.lambda_max = as_number(value, where);
    else unknown_key("shaping", key);
  }
}

void parse_thresholds(const json& section, Thresholds& t) {
  for (const auto& [key, value] : section.items()) {
    const std::string where = "thresholds." + key;
    if (key == "critical_below") t.critical_below = as_number(value, where);
    else if (key == "constrained_below") t.constrained_below = as_number(value, where);
    else if (key == "congestion_backlog_seconds")
      t.congestion_backlog_seconds = as_number(value, where);
    else unknown_key("thresholds", key);
  }
}

void parse_agent(const json& section, AgentConfig& a) {
  for (const auto& [key, value] : section.items()) {
    const std::string where = "agent." + key;
    if (key == "gamma") a.gamma = as_number(value, where);
    else if (key == "actor_rate") a.actor_rate = as_number(value, where);
    else if (key == "critic_rate") a.critic_rate = as_number(value, where);
    else if (key == "batch_size") a.batch_size = as_int(value, where);
    else if (key == "tau") a.tau = as_number(value, where);
    else if (key == "replay_capacity") a.replay_capacity = as_int(value, where);
    else if (key == "ddpg_sigma") a.ddpg_sigma = as_number(value, where);
    else if (key == "dqn_epsilon_start") a.dqn_epsilon_start = as_number(value, where);
    else if (key == "dqn_epsilon_end") a.dqn_epsilon_end = as_number(value, where);
    else if (key == "dqn_epsilon_decay_episodes")
      a.dqn_epsilon_decay_episodes = as_int(value, where);
    else if (key == "diffusion_steps") a.diffusion_steps = as_int(value, where);
    else if (key == "beta_min") a.beta_min = as_number(value, where);
    else if (key == "beta_max") a.beta_max = as_number(value, where);
    else if (key == "d3pg_sigma_start") a.d3pg_sigma_start = as_number(value, where);
    else if (key == "d3pg_sigma_end") a.d3pg_sigma_end = as_number(value, where);
    else if (key == "d3pg_sigma_decay_episodes")
      a.d3pg_sigma_decay_episodes = as_int(value, where);
    else if (key == "train_every_steps") a.train_every_steps = as_int(value, where);
    else if (key == "warmup_transitions") a.warmup_transitions = as_int(value, where);
    else if (key == "pretrain_epochs") a.pretrain_epochs = as_int(value, where);
    else if (key == "pretrain_top_k") a.pretrain_top_k = as_int(value, where);
    else if (key == "pretrain_rate") a.pretrain_rate = as_number(value, where);
    else if (key == "hidden_width") a.hidden_width = as_int(value, where);
    else unknown_key("agent", key);
  }
}

}  // namespace

void validate(const FullConfig& config) {
  build_scenario(config.scenario);  // validates and names the offending field
  validate(config.intent);
  validate(config.shaping);
  validate(config.thresholds);
  validate(config.agent);
  if (config.kpi_window < 1) throw ConfigError("config: kpi_window must be at least 1");
}

FullConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());

  json root = json::parse(in, nullptr, false);
  if (root.is_discarded()) throw ConfigError("config: " + path.string() + " is not valid JSON");
  if (!root.is_object()) throw ConfigError("config: top level must be an object");

  FullConfig config;
  for (const auto& [section, value] : root.items()) {
    if (section == "kpi_window") {
      config.kpi_window = as_int(value, "kpi_window");
      continue;
    }
    if (!value.is_object()) throw ConfigError("config: section " + section + " must be an object");
    if (section == "scenario") parse_scenario(value, config.scenario);
    else if (section == "intent") parse_intent(value, config.intent);
    else if (section == "shaping") parse_shaping(value, config.shaping);
    else if (section == "thresholds") parse_thresholds(value, config.thresholds);
    else if (section == "agent") parse_agent(value, config.agent);
    else throw ConfigError("config: unknown section " + section);
  }

  validate(config);
  return config;
}

}  // namespace sagin
