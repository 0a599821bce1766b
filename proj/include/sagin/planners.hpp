#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "sagin/knowledge.hpp"
#include "sagin/orchestrator.hpp"
#include "sagin/rl/agent_config.hpp"
#include "sagin/sim_core.hpp"

namespace sagin {

enum class PlannerMode { Train, Eval };

// One planning step: the concrete placement plus the raw action in the
// planner's native space, kept for replay buffers and trajectory logs.
struct ActChoice {
  PlacementDecision decision;
  Eigen::VectorXd continuous_action;  // empty for index-based planners
  int discrete_index = -1;            // -1 for continuous planners
};

// Uniform handle over the five compared methods.  The harness drives it;
// everything method-specific (exploration schedules, replay, updates) stays
// behind this interface.
class Planner {
 public:
  virtual ~Planner() = default;

  virtual void begin_episode(int episode) { (void)episode; }
  virtual ActChoice act(const EnvState& env, const Eigen::VectorXd& obs) = 0;
  virtual void observe(const Eigen::VectorXd& obs, const ActChoice& choice, double reward,
                       const Eigen::VectorXd& next_obs, bool done) {
    (void)obs; (void)choice; (void)reward; (void)next_obs; (void)done;
  }

  // Diffusion planners warm-start from stored rollouts; others ignore this.
  virtual void warm_start(const std::vector<TrajectoryRecord>& trajectories) {
    (void)trajectories;
  }

  virtual bool learns() const { return true; }
  virtual void save(const std::filesystem::path& dir) const = 0;
};

// Writes a placement into the continuous action layout (chosen node scored
// +1, others -1; relay preference; affine power) so that decoding it back
// under the same world reproduces the decision.
Eigen::VectorXd encode_decision(const PlacementDecision& decision, const World& world);

// Builds the planner for a method.  Train mode starts from fresh seeded
// networks; Eval mode loads the artifacts a previous run saved under
// artifact_dir and throws ConfigError naming the path when one is missing.
std::unique_ptr<Planner> select_planner(PlannerChoice choice, PlannerMode mode,
                                        const AgentConfig& config, const World& world,
                                        std::uint64_t agent_seed,
                                        const std::filesystem::path& artifact_dir = {});

}  // namespace sagin
