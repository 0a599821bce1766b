#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "sagin/errors.hpp"
#include "sagin/kpi.hpp"
#include "sagin/reward.hpp"
#include "sagin/semantic.hpp"

namespace sagin {

// The operator's declarative objective.  The note is logged verbatim and
// never parsed.
struct Intent {
  double target_latency_ms = 1000.0;
  double uav_energy_floor = 0.15;
  std::string objective_note = "minimize service latency while ensuring UAV energy sustainability";
};

void validate(const Intent& intent);

// Deterministic stand-in for a generative advisor: one energy-level row per
// multiplier, applied to a base coefficient and clamped.
struct ShapingRuleTable {
  double multiplier_adequate = 1.0;
  double multiplier_constrained = 2.0;
  double multiplier_critical = 4.0;
  double lambda_base = 1.0;
  double lambda_min = 0.25;
  double lambda_max = 8.0;

  double multiplier(EnergyLevel level) const {
    switch (level) {
      case EnergyLevel::Critical: return multiplier_critical;
      case EnergyLevel::Constrained: return multiplier_constrained;
      case EnergyLevel::Adequate: return multiplier_adequate;
    }
    return multiplier_adequate;
  }
};

void validate(const ShapingRuleTable& table);

// The five compared methods.
enum class PlannerChoice { LlmShapedD3pg, FixedD3pg, LlmShapedDdpg, LlmShapedDqn, Greedy };

const char* to_string(PlannerChoice choice);
std::optional<PlannerChoice> parse_planner_choice(const std::string& name);

// lambda = clamp(lambda_base * multiplier(level)); the provenance names the
// episode, the semantic label, and the fired rule row so the value can be
// recomputed from logs.  Applied at episode boundaries only.
RewardConfig shape_reward(const SemanticState& s, const Intent& intent,
                          const ShapingRuleTable& table, double latency_ref_ms = 1000.0,
                          double energy_ref = 0.01, int episode = -1);

// A structured table-update proposal: new multipliers for a subset of energy
// levels.  This is the seam where a generative advisor would attach.
struct TableSuggestion {
  std::map<EnergyLevel, double> multipliers;
};

struct SuggestionOutcome {
  bool adopted = false;
  std::string reason;
  ShapingRuleTable table;
};

// Validates a suggestion against the table invariants (positive multipliers,
// strictly increasing toward Critical) and returns either the merged table
// or the original with a rejection reason.
SuggestionOutcome apply_suggestion(const ShapingRuleTable& table, const TableSuggestion& s);

class Advisor {
 public:
  virtual ~Advisor() = default;
  virtual std::optional<TableSuggestion> propose(const SemanticState& s, const Intent& intent,
                                                 std::span<const KpiEntry> history) = 0;
};

// Default advisor: never proposes anything; the rule table stands as-is.
class RuleTableAdvisor final : public Advisor {
 public:
  std::optional<TableSuggestion> propose(const SemanticState&, const Intent&,
                                         std::span<const KpiEntry>) override {
    return std::nullopt;
  }
};

}  // namespace sagin
