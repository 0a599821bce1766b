#include "sagin/rl/ddpg.hpp"

#include "batch_util.hpp"

namespace sagin {
namespace {

// Critic input is the observation stacked over the action.
Eigen::MatrixXd stack(const Eigen::MatrixXd& obs, const Eigen::MatrixXd& actions) {
  Eigen::MatrixXd joined(obs.rows() + actions.rows(), obs.cols());
  joined.topRows(obs.rows()) = obs;
  joined.bottomRows(actions.rows()) = actions;
  return joined;
}

}  // namespace

Eigen::VectorXd ddpg_select(const Mlp& actor, const Eigen::VectorXd& obs, double sigma, Rng& rng) {
  Eigen::VectorXd action = mlp_forward(actor, obs);
  if (sigma > 0.0)
    for (Eigen::Index i = 0; i < action.size(); ++i)
      action[i] = std::clamp(action[i] + sigma * rng.gaussian(), -1.0, 1.0);
  return action;
}

void ddpg_train_step(const ReplayBuffer<Eigen::VectorXd>& buffer, Mlp& actor, Mlp& critic,
                     Mlp& actor_target, Mlp& critic_target, const AgentConfig& config, Rng& rng) {
  if (buffer.size() == 0) return;
  const int n = config.batch_size;
  const auto batch = detail::gather(buffer, buffer.sample_indices(n, rng));
  const int act_dim = static_cast<int>(batch.actions[0].size());
  Eigen::MatrixXd taken(act_dim, n);
  for (int i = 0; i < n; ++i) taken.col(i) = batch.actions[i];

  // Critic target: r + gamma * (1 - done) * Q_target(s', actor_target(s')).
  const Eigen::MatrixXd next_actions = mlp_forward(actor_target, batch.next_obs);
  const Eigen::MatrixXd next_q = mlp_forward(critic_target, stack(batch.next_obs, next_actions));
  Eigen::VectorXd target(n);
  for (int i = 0; i < n; ++i)
    target[i] = batch.reward[i] + config.gamma * batch.not_done[i] * next_q(0, i);

  MlpTrace critic_trace;
  const Eigen::MatrixXd q = mlp_forward(critic, stack(batch.obs, taken), &critic_trace);
  Eigen::MatrixXd critic_upstream(1, n);
  for (int i = 0; i < n; ++i) critic_upstream(0, i) = (q(0, i) - target[i]) / n;
  sgd_step(critic, mlp_backward(critic, critic_trace, critic_upstream), config.critic_rate);

  // Actor: ascend Q(s, actor(s)); the critic pass yields dQ/da as the input
  // gradient of the action rows.
  MlpTrace actor_trace;
  const Eigen::MatrixXd fresh_actions = mlp_forward(actor, batch.obs, &actor_trace);
  MlpTrace q_trace;
  mlp_forward(critic, stack(batch.obs, fresh_actions), &q_trace);
  const MlpGrads q_grads =
      mlp_backward(critic, q_trace, Eigen::MatrixXd::Constant(1, n, -1.0 / n));
  const Eigen::MatrixXd actor_upstream = q_grads.input.bottomRows(act_dim);
  sgd_step(actor, mlp_backward(actor, actor_trace, actor_upstream), config.actor_rate);

  soft_update(critic_target, critic, config.tau);
  soft_update(actor_target, actor, config.tau);
}

}  // namespace sagin
