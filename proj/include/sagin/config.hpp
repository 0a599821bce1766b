#pragma once

#include <filesystem>

#include "sagin/env_model.hpp"
#include "sagin/orchestrator.hpp"
#include "sagin/perceiver.hpp"
#include "sagin/rl/agent_config.hpp"

namespace sagin {

// Everything a run needs, grouped the way the config file is.
struct FullConfig {
  ScenarioConfig scenario;
  Intent intent;
  ShapingRuleTable shaping;
  Thresholds thresholds;
  AgentConfig agent;
  int kpi_window = 20;
};

void validate(const FullConfig& config);

// Parses a JSON config file.  Every key is optional and defaults to the
// reference scenario; an unknown section or key is a hard ConfigError naming
// it, so typos cannot silently fall back to defaults.
FullConfig load_config(const std::filesystem::path& path);

}  // namespace sagin
