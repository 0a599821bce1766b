#pragma once

#include <Eigen/Dense>

#include "sagin/rl/agent_config.hpp"
#include "sagin/rl/mlp.hpp"
#include "sagin/rl/replay.hpp"

namespace sagin {

// Epsilon-greedy over the Q-net's discrete outputs.  Greedy ties resolve to
// the lowest index; the exploratory branch draws uniformly.
int dqn_select(const Mlp& q_net, const Eigen::VectorXd& obs, double epsilon, Rng& rng);

// One-step TD update with a soft-updated target network.  No-op while the
// buffer is empty; smaller buffers are sampled with replacement.
void dqn_train_step(const ReplayBuffer<int>& buffer, Mlp& q_net, Mlp& target_net,
                    const AgentConfig& config, Rng& rng);

}  // namespace sagin
