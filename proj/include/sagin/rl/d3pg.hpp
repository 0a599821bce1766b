#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sagin/knowledge.hpp"
#include "sagin/rl/agent_config.hpp"
#include "sagin/rl/mlp.hpp"
#include "sagin/rl/replay.hpp"

namespace sagin {

// Denoising step sizes indexed by step number k = 1..K; the chain runs them
// from K down to 1.  All betas lie strictly inside (0, 1) and increase with k.
struct DiffusionSchedule {
  std::vector<double> beta;

  int steps() const { return static_cast<int>(beta.size()); }
  double at(int k) const { return beta[k - 1]; }
};

DiffusionSchedule linear_schedule(int steps, double beta_min, double beta_max);
void validate(const DiffusionSchedule& schedule);

enum class SampleMode { Explore, Eval };

// Runs the clamped denoising chain a <- clamp(a - beta_k * D(obs, a, k/K))
// for k = K..1.  Eval mode starts at zero and is fully deterministic;
// explore mode starts from a seeded Gaussian and perturbs after every step
// (clamped again).  Output entries always lie in [-1, 1].
Eigen::VectorXd d3pg_sample(const Mlp& denoiser, const Eigen::VectorXd& obs,
                            const DiffusionSchedule& schedule, SampleMode mode, Rng& rng,
                            double sigma = 0.0);

// Batched eval-mode chain (columns = samples), used for critic targets.
Eigen::MatrixXd d3pg_eval_batch(const Mlp& denoiser, const Eigen::MatrixXd& obs,
                                const DiffusionSchedule& schedule);

// DDPG-style update where the actor is the denoising chain: the critic
// learns one-step TD with eval-mode target actions, and the denoiser ascends
// Q(s, a_0) by backpropagation through all K clamped steps (clamp passes
// gradient in the interior, zero at the bounds).
void d3pg_train_step(const ReplayBuffer<Eigen::VectorXd>& buffer, Mlp& denoiser, Mlp& critic,
                     Mlp& denoiser_target, Mlp& critic_target, const AgentConfig& config,
                     const DiffusionSchedule& schedule, Rng& rng);

// Denoising score-matching warm-start on stored trajectories: perturb stored
// actions with scheduled noise and regress the denoiser onto the injected
// noise.  Zero epochs or an empty store leave the denoiser untouched.
void pretrain_denoiser(const std::vector<TrajectoryRecord>& trajectories, Mlp& denoiser,
                       int epochs, const DiffusionSchedule& schedule, double rate,
                       int batch_size, Rng& rng);

}  // namespace sagin
