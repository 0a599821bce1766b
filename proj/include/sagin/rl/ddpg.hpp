#pragma once

#include <Eigen/Dense>

#include "sagin/rl/agent_config.hpp"
#include "sagin/rl/mlp.hpp"
#include "sagin/rl/replay.hpp"

namespace sagin {

// actor(obs) plus clamped Gaussian exploration noise; sigma = 0 reproduces
// the deterministic policy exactly.
Eigen::VectorXd ddpg_select(const Mlp& actor, const Eigen::VectorXd& obs, double sigma, Rng& rng);

// Standard deterministic policy gradient update: one-step TD critic against
// target networks, actor ascending dQ/da through the critic, soft updates.
void ddpg_train_step(const ReplayBuffer<Eigen::VectorXd>& buffer, Mlp& actor, Mlp& critic,
                     Mlp& actor_target, Mlp& critic_target, const AgentConfig& config, Rng& rng);

}  // namespace sagin
