#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sagin/kpi.hpp"
#include "sagin/orchestrator.hpp"

namespace sagin {

// Tumbling window of per-episode KPIs.  The learner judges a full window,
// then clears it: refinement happens at most once per W episodes.
class KpiWindow {
 public:
  explicit KpiWindow(int length = 20) : length_(length) {}

  void push(const KpiEntry& entry) {
    if (full()) return;
    entries_.push_back(entry);
  }
  bool full() const { return static_cast<int>(entries_.size()) >= length_; }
  int length() const { return length_; }
  void clear() { entries_.clear(); }
  const std::vector<KpiEntry>& entries() const { return entries_; }

 private:
  int length_;
  std::vector<KpiEntry> entries_;
};

enum class DeviationKind { LatencyAboveTarget, EnergyFloorViolated };

const char* to_string(DeviationKind kind);

struct Deviation {
  DeviationKind kind = DeviationKind::LatencyAboveTarget;
  double magnitude = 0.0;       // relative excess over the intent bound
  int episode_begin = 0;
  int episode_end = 0;
  std::string action_taken;     // stamped after refine_config runs
};

// Judges one full window against the intent.  A partial window yields no
// deviations (not yet judged).  Latency deviates when the window mean
// exceeds target by more than 10%; energy deviates when any episode's
// minimum UAV end energy dips under the floor.
std::vector<Deviation> record_feedback(const KpiWindow& window, const Intent& intent,
                                       int episode_begin, int episode_end);

// Applies the refinement rules to the deviation log (append order): an
// energy violation in the newest window raises lambda_base by 1.25x; two
// consecutive latency-deviating windows lower it by 0.8x; energy takes
// precedence.  Always clamped to [lambda_min, lambda_max].
ShapingRuleTable refine_config(const std::vector<Deviation>& log, const ShapingRuleTable& table);

// Drives the window lifecycle for one (method, seed) run.
class AdaptiveLearner {
 public:
  struct WindowOutcome {
    std::vector<Deviation> deviations;  // action_taken already stamped
    ShapingRuleTable table;
    bool table_changed = false;
    std::string reason;
    int episode_begin = 0;
    int episode_end = 0;
  };

  AdaptiveLearner(Intent intent, int window_length = 20)
      : intent_(std::move(intent)), window_(window_length) {}

  // Feeds one episode's KPIs; returns a verdict when a window closes.
  std::optional<WindowOutcome> on_episode(int episode, const KpiEntry& entry,
                                          const ShapingRuleTable& table);

  const std::vector<Deviation>& deviation_log() const { return log_; }

 private:
  Intent intent_;
  KpiWindow window_;
  std::vector<Deviation> log_;
  int window_begin_ = 0;
};

}  // namespace sagin
