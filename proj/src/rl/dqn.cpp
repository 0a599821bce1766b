#include "sagin/rl/dqn.hpp"

#include "batch_util.hpp"

namespace sagin {

int dqn_select(const Mlp& q_net, const Eigen::VectorXd& obs, double epsilon, Rng& rng) {
  const int actions = q_net.output_size();
  if (epsilon > 0.0 && rng.canonical() < epsilon)
    return static_cast<int>(rng.uniform_index(actions));

  const Eigen::VectorXd q = mlp_forward(q_net, obs);
  int best = 0;
  for (int a = 1; a < actions; ++a)
    if (q[a] > q[best]) best = a;
  return best;
}

void dqn_train_step(const ReplayBuffer<int>& buffer, Mlp& q_net, Mlp& target_net,
                    const AgentConfig& config, Rng& rng) {
  if (buffer.size() == 0) return;
  const int n = config.batch_size;
  const detail::Batch<int> batch = detail::gather(buffer, buffer.sample_indices(n, rng));

  // y = r + gamma * (1 - done) * max_a Q_target(s', a)
  const Eigen::MatrixXd next_q = mlp_forward(target_net, batch.next_obs);
  Eigen::VectorXd target(n);
  for (int i = 0; i < n; ++i)
    target[i] = batch.reward[i] +
                config.gamma * batch.not_done[i] * next_q.col(i).maxCoeff();

  MlpTrace trace;
  const Eigen::MatrixXd q = mlp_forward(q_net, batch.obs, &trace);

  // Half squared error on the taken action only.
  Eigen::MatrixXd upstream = Eigen::MatrixXd::Zero(q.rows(), q.cols());
  for (int i = 0; i < n; ++i) {
    const int a = batch.actions[i];
    upstream(a, i) = (q(a, i) - target[i]) / n;
  }
  sgd_step(q_net, mlp_backward(q_net, trace, upstream), config.critic_rate);
  soft_update(target_net, q_net, config.tau);
}

}  // namespace sagin
