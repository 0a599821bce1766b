#pragma once

#include "sagin/errors.hpp"

namespace sagin {

// Training hyperparameters shared by the learning methods.  The first block
// is conventional actor-critic settings; the second holds schedule knobs the
// reference behavior leaves open.
struct AgentConfig {
  double gamma = 0.99;
  double actor_rate = 1e-4;
  double critic_rate = 1e-3;
  int batch_size = 64;
  double tau = 0.005;
  int replay_capacity = 50000;

  double ddpg_sigma = 0.1;           // constant Gaussian exploration, clamped
  double dqn_epsilon_start = 1.0;
  double dqn_epsilon_end = 0.05;
  int dqn_epsilon_decay_episodes = 500;

  int diffusion_steps = 5;           // K
  double beta_min = 1e-4;
  double beta_max = 0.1;
  double d3pg_sigma_start = 0.2;     // explore-mode per-step noise, decayed
  double d3pg_sigma_end = 0.03;
  int d3pg_sigma_decay_episodes = 600;

  int train_every_steps = 1;         // environment steps between updates
  int warmup_transitions = 2500;     // buffer size required before training
  int pretrain_epochs = 300;         // denoiser warm-start passes
  int pretrain_top_k = 50;           // trajectories drawn from the store
  double pretrain_rate = 2e-3;
  int hidden_width = 64;             // units per hidden layer, all networks
};

inline void validate(const AgentConfig& c) {
  if (!(c.gamma > 0.0 && c.gamma <= 1.0)) throw ConfigError("agent config: gamma must be in (0, 1]");
  if (!(c.tau > 0.0 && c.tau <= 1.0)) throw ConfigError("agent config: tau must be in (0, 1]");
  if (!(c.actor_rate > 0.0 && c.critic_rate > 0.0 && c.pretrain_rate > 0.0))
    throw ConfigError("agent config: learning rates must be positive");
  if (c.batch_size <= 0) throw ConfigError("agent config: batch_size must be positive");
  if (c.replay_capacity <= 0) throw ConfigError("agent config: replay_capacity must be positive");
  if (!(c.ddpg_sigma >= 0.0)) throw ConfigError("agent config: ddpg_sigma must be non-negative");
  if (!(c.dqn_epsilon_start >= c.dqn_epsilon_end && c.dqn_epsilon_end >= 0.0 &&
        c.dqn_epsilon_start <= 1.0))
    throw ConfigError("agent config: need 0 <= dqn_epsilon_end <= dqn_epsilon_start <= 1");
  if (c.dqn_epsilon_decay_episodes <= 0)
    throw ConfigError("agent config: dqn_epsilon_decay_episodes must be positive");
  if (c.diffusion_steps < 1) throw ConfigError("agent config: diffusion_steps must be at least 1");
  if (!(c.beta_min > 0.0 && c.beta_min <= c.beta_max && c.beta_max < 1.0))
    throw ConfigError("agent config: need 0 < beta_min <= beta_max < 1");
  if (!(c.d3pg_sigma_start >= 0.0 && c.d3pg_sigma_end >= 0.0))
    throw ConfigError("agent config: diffusion noise levels must be non-negative");
  if (c.d3pg_sigma_decay_episodes <= 0)
    throw ConfigError("agent config: d3pg_sigma_decay_episodes must be positive");
  if (c.train_every_steps <= 0) throw ConfigError("agent config: train_every_steps must be positive");
  if (c.warmup_transitions < 0) throw ConfigError("agent config: warmup_transitions must be non-negative");
  if (c.pretrain_epochs < 0) throw ConfigError("agent config: pretrain_epochs must be non-negative");
  if (c.pretrain_top_k < 0) throw ConfigError("agent config: pretrain_top_k must be non-negative");
  if (c.hidden_width < 1) throw ConfigError("agent config: hidden_width must be at least 1");
}

// Linear anneal from start to end over decay_episodes, flat afterwards.
inline double annealed(double start, double end, int decay_episodes, int episode) {
  if (episode >= decay_episodes) return end;
  if (episode < 0) return start;
  return start + (end - start) * (static_cast<double>(episode) / decay_episodes);
}

}  // namespace sagin
