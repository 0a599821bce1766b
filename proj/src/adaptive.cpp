#include "sagin/adaptive.hpp"

#include <algorithm>
#include <cmath>

namespace sagin {
namespace {

// Newest window in the log, identified by episode range.
struct WindowRef {
  int begin = -1;
  int end = -1;
  bool latency = false;
  bool energy = false;
};

std::vector<WindowRef> group_by_window(const std::vector<Deviation>& log) {
  std::vector<WindowRef> windows;
  for (const Deviation& d : log) {
    if (windows.empty() || windows.back().begin != d.episode_begin ||
        windows.back().end != d.episode_end)
      windows.push_back({d.episode_begin, d.episode_end, false, false});
    if (d.kind == DeviationKind::LatencyAboveTarget) windows.back().latency = true;
    if (d.kind == DeviationKind::EnergyFloorViolated) windows.back().energy = true;
  }
  return windows;
}

}  // namespace

const char* to_string(DeviationKind kind) {
  switch (kind) {
    case DeviationKind::LatencyAboveTarget: return "LatencyAboveTarget";
    case DeviationKind::EnergyFloorViolated: return "EnergyFloorViolated";
  }
  return "LatencyAboveTarget";
}

std::vector<Deviation> record_feedback(const KpiWindow& window, const Intent& intent,
                                       int episode_begin, int episode_end) {
  std::vector<Deviation> deviations;
  if (!window.full()) return deviations;

  double latency_sum = 0.0;
  double worst_energy = 1.0;
  for (const KpiEntry& e : window.entries()) {
    latency_sum += e.mean_latency_ms;
    worst_energy = std::min(worst_energy, e.min_uav_end_energy);
  }
  const double mean_latency = latency_sum / window.entries().size();

  // Energy first: sustainability is the hard goal and downstream refinement
  // gives it precedence anyway.
  if (worst_energy < intent.uav_energy_floor) {
    Deviation d;
    d.kind = DeviationKind::EnergyFloorViolated;
    d.magnitude = intent.uav_energy_floor > 0.0
                      ? (intent.uav_energy_floor - worst_energy) / intent.uav_energy_floor
                      : intent.uav_energy_floor - worst_energy;
    d.episode_begin = episode_begin;
    d.episode_end = episode_end;
    deviations.push_back(d);
  }
  if (mean_latency > 1.1 * intent.target_latency_ms) {
    Deviation d;
    d.kind = DeviationKind::LatencyAboveTarget;
    d.magnitude = mean_latency / intent.target_latency_ms - 1.0;
    d.episode_begin = episode_begin;
    d.episode_end = episode_end;
    deviations.push_back(d);
  }
  return deviations;
}

ShapingRuleTable refine_config(const std::vector<Deviation>& log, const ShapingRuleTable& table) {
  const std::vector<WindowRef> windows = group_by_window(log);
  if (windows.empty()) return table;

  ShapingRuleTable refined = table;
  const WindowRef& newest = windows.back();
  if (newest.energy) {
    refined.lambda_base = std::min(table.lambda_max, 1.25 * table.lambda_base);
  } else if (newest.latency && windows.size() >= 2) {
    const WindowRef& previous = windows[windows.size() - 2];
    const bool consecutive = previous.end + 1 == newest.begin;
    if (consecutive && previous.latency)
      refined.lambda_base = std::max(table.lambda_min, 0.8 * table.lambda_base);
  }
  return refined;
}

std::optional<AdaptiveLearner::WindowOutcome> AdaptiveLearner::on_episode(
    int episode, const KpiEntry& entry, const ShapingRuleTable& table) {
  if (window_.entries().empty()) window_begin_ = episode;
  window_.push(entry);
  if (!window_.full()) return std::nullopt;

  WindowOutcome outcome;
  outcome.episode_begin = window_begin_;
  outcome.episode_end = episode;
  outcome.deviations = record_feedback(window_, intent_, window_begin_, episode);

  for (const Deviation& d : outcome.deviations) log_.push_back(d);
  outcome.table = refine_config(log_, table);
  outcome.table_changed = outcome.table.lambda_base != table.lambda_base;
  if (outcome.table_changed) {
    const bool raised = outcome.table.lambda_base > table.lambda_base;
    outcome.reason = raised ? "energy floor violated in window: lambda_base *= 1.25"
                            : "two consecutive latency-deviating windows: lambda_base *= 0.8";
  } else {
    outcome.reason = "no refinement";
  }

  // Stamp the action onto this window's deviations, in the log and the copy.
  const std::string action = outcome.table_changed ? outcome.reason : "none";
  for (Deviation& d : log_)
    if (d.episode_begin == window_begin_ && d.episode_end == episode) d.action_taken = action;
  for (Deviation& d : outcome.deviations) d.action_taken = action;

  window_.clear();
  return outcome;
}

}  // namespace sagin
