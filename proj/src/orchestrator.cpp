#include "sagin/orchestrator.hpp"

#include <algorithm>

namespace sagin {

void validate(const Intent& intent) {
  if (!(intent.target_latency_ms > 0.0))
    throw ConfigError("intent: target_latency_ms must be positive");
  if (!(intent.uav_energy_floor >= 0.0 && intent.uav_energy_floor < 1.0))
    throw ConfigError("intent: uav_energy_floor must lie in [0, 1)");
}

void validate(const ShapingRuleTable& table) {
  if (!(table.multiplier_adequate > 0.0))
    throw ConfigError("shaping table: multipliers must be positive");
  if (!(table.multiplier_adequate < table.multiplier_constrained &&
        table.multiplier_constrained < table.multiplier_critical))
    throw ConfigError("shaping table: multipliers must increase strictly toward Critical");
  if (!(table.lambda_min > 0.0 && table.lambda_min <= table.lambda_max))
    throw ConfigError("shaping table: need 0 < lambda_min <= lambda_max");
  if (!(table.lambda_base > 0.0))
    throw ConfigError("shaping table: lambda_base must be positive");
}

const char* to_string(PlannerChoice choice) {
  switch (choice) {
    case PlannerChoice::LlmShapedD3pg: return "LlmShapedD3pg";
    case PlannerChoice::FixedD3pg: return "FixedD3pg";
    case PlannerChoice::LlmShapedDdpg: return "LlmShapedDdpg";
    case PlannerChoice::LlmShapedDqn: return "LlmShapedDqn";
    case PlannerChoice::Greedy: return "Greedy";
  }
  return "Greedy";
}

std::optional<PlannerChoice> parse_planner_choice(const std::string& name) {
  for (PlannerChoice c : {PlannerChoice::LlmShapedD3pg, PlannerChoice::FixedD3pg,
                          PlannerChoice::LlmShapedDdpg, PlannerChoice::LlmShapedDqn,
                          PlannerChoice::Greedy})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

RewardConfig shape_reward(const SemanticState& s, const Intent&, const ShapingRuleTable& table,
                          double latency_ref_ms, double energy_ref, int episode) {
  const double multiplier = table.multiplier(s.uav_energy_level);
  RewardConfig config;
  config.lambda = std::clamp(table.lambda_base * multiplier, table.lambda_min, table.lambda_max);
  config.lambda_max = table.lambda_max;
  config.latency_ref_ms = latency_ref_ms;
  config.energy_ref = energy_ref;
  config.provenance.episode = episode;
  config.provenance.semantic_label = to_string(s.uav_energy_level);
  config.provenance.rule = std::string(to_string(s.uav_energy_level)) + " x" +
                           std::to_string(multiplier) + " base " +
                           std::to_string(table.lambda_base);
  return config;
}

SuggestionOutcome apply_suggestion(const ShapingRuleTable& table, const TableSuggestion& s) {
  ShapingRuleTable merged = table;
  for (const auto& [level, multiplier] : s.multipliers) {
    switch (level) {
      case EnergyLevel::Adequate: merged.multiplier_adequate = multiplier; break;
      case EnergyLevel::Constrained: merged.multiplier_constrained = multiplier; break;
      case EnergyLevel::Critical: merged.multiplier_critical = multiplier; break;
    }
  }
  try {
    validate(merged);
  } catch (const ConfigError& e) {
    return {false, e.what(), table};
  }
  return {true, "adopted", merged};
}

}  // namespace sagin
