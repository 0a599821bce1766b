#include "sagin/rl/d3pg.hpp"

#include <algorithm>
#include <stdexcept>

#include "batch_util.hpp"

namespace sagin {
namespace {

Eigen::MatrixXd stack(const Eigen::MatrixXd& obs, const Eigen::MatrixXd& actions) {
  Eigen::MatrixXd joined(obs.rows() + actions.rows(), obs.cols());
  joined.topRows(obs.rows()) = obs;
  joined.bottomRows(actions.rows()) = actions;
  return joined;
}

// Denoiser input: observation, current action iterate, step embedding k/K.
Eigen::MatrixXd denoiser_input(const Eigen::MatrixXd& obs, const Eigen::MatrixXd& actions,
                               double embedding) {
  Eigen::MatrixXd joined(obs.rows() + actions.rows() + 1, obs.cols());
  joined.topRows(obs.rows()) = obs;
  joined.middleRows(obs.rows(), actions.rows()) = actions;
  joined.bottomRows(1).setConstant(embedding);
  return joined;
}

// Everything backward needs from one chain step.
struct ChainStepTrace {
  MlpTrace net;
  Eigen::ArrayXXd interior;  // 1 where the clamp passed gradient through
  double beta = 0.0;
};

// Shared chain driver.  rng == nullptr runs eval mode.
Eigen::MatrixXd run_chain(const Mlp& denoiser, const Eigen::MatrixXd& obs, Eigen::MatrixXd a,
                          const DiffusionSchedule& schedule,
                          std::vector<ChainStepTrace>* traces, Rng* rng, double sigma) {
  const int K = schedule.steps();
  if (traces) {
    traces->clear();
    traces->reserve(K);
  }
  for (int k = K; k >= 1; --k) {
    const double beta = schedule.at(k);
    const double embedding = static_cast<double>(k) / K;
    ChainStepTrace step;
    step.beta = beta;
    const Eigen::MatrixXd d =
        mlp_forward(denoiser, denoiser_input(obs, a, embedding), traces ? &step.net : nullptr);
    const Eigen::MatrixXd z = a - beta * d;
    a = z.cwiseMax(-1.0).cwiseMin(1.0);
    if (traces) {
      step.interior = (z.array().abs() < 1.0).cast<double>();
      traces->push_back(std::move(step));
    }
    if (rng && sigma > 0.0) {
      for (Eigen::Index c = 0; c < a.cols(); ++c)
        for (Eigen::Index r = 0; r < a.rows(); ++r)
          a(r, c) = std::clamp(a(r, c) + sigma * rng->gaussian(), -1.0, 1.0);
    }
  }
  return a;
}

}  // namespace

DiffusionSchedule linear_schedule(int steps, double beta_min, double beta_max) {
  DiffusionSchedule schedule;
  schedule.beta.resize(steps);
  for (int k = 1; k <= steps; ++k)
    schedule.beta[k - 1] =
        steps == 1 ? beta_max
                   : beta_min + (beta_max - beta_min) * (k - 1) / static_cast<double>(steps - 1);
  validate(schedule);
  return schedule;
}

void validate(const DiffusionSchedule& schedule) {
  if (schedule.steps() < 1) throw ConfigError("diffusion schedule: need at least one step");
  for (int k = 1; k <= schedule.steps(); ++k) {
    if (!(schedule.at(k) > 0.0 && schedule.at(k) < 1.0))
      throw ConfigError("diffusion schedule: betas must lie in (0, 1)");
    if (k > 1 && !(schedule.at(k) > schedule.at(k - 1)))
      throw ConfigError("diffusion schedule: betas must increase strictly");
  }
}

Eigen::VectorXd d3pg_sample(const Mlp& denoiser, const Eigen::VectorXd& obs,
                            const DiffusionSchedule& schedule, SampleMode mode, Rng& rng,
                            double sigma) {
  const int act_dim = denoiser.output_size();
  Eigen::MatrixXd start(act_dim, 1);
  if (mode == SampleMode::Explore)
    for (int r = 0; r < act_dim; ++r) start(r, 0) = rng.gaussian();
  else
    start.setZero();
  return run_chain(denoiser, obs, std::move(start), schedule, nullptr,
                   mode == SampleMode::Explore ? &rng : nullptr, sigma)
      .col(0);
}

Eigen::MatrixXd d3pg_eval_batch(const Mlp& denoiser, const Eigen::MatrixXd& obs,
                                const DiffusionSchedule& schedule) {
  return run_chain(denoiser, obs, Eigen::MatrixXd::Zero(denoiser.output_size(), obs.cols()),
                   schedule, nullptr, nullptr, 0.0);
}

void d3pg_train_step(const ReplayBuffer<Eigen::VectorXd>& buffer, Mlp& denoiser, Mlp& critic,
                     Mlp& denoiser_target, Mlp& critic_target, const AgentConfig& config,
                     const DiffusionSchedule& schedule, Rng& rng) {
  if (buffer.size() == 0) return;
  const int n = config.batch_size;
  const auto batch = detail::gather(buffer, buffer.sample_indices(n, rng));
  const int obs_dim = static_cast<int>(batch.obs.rows());
  const int act_dim = denoiser.output_size();
  Eigen::MatrixXd taken(act_dim, n);
  for (int i = 0; i < n; ++i) taken.col(i) = batch.actions[i];

  // Critic: TD target with next actions drawn by the target denoiser's
  // deterministic chain.
  const Eigen::MatrixXd next_actions = d3pg_eval_batch(denoiser_target, batch.next_obs, schedule);
  const Eigen::MatrixXd next_q = mlp_forward(critic_target, stack(batch.next_obs, next_actions));
  Eigen::VectorXd target(n);
  for (int i = 0; i < n; ++i)
    target[i] = batch.reward[i] + config.gamma * batch.not_done[i] * next_q(0, i);

  MlpTrace critic_trace;
  const Eigen::MatrixXd q = mlp_forward(critic, stack(batch.obs, taken), &critic_trace);
  Eigen::MatrixXd critic_upstream(1, n);
  for (int i = 0; i < n; ++i) critic_upstream(0, i) = (q(0, i) - target[i]) / n;
  sgd_step(critic, mlp_backward(critic, critic_trace, critic_upstream), config.critic_rate);

  // Actor: run the eval chain with traces, score a_0 under the critic, and
  // push the ascent gradient back through every clamped step.
  std::vector<ChainStepTrace> chain;
  const Eigen::MatrixXd a0 =
      run_chain(denoiser, batch.obs, Eigen::MatrixXd::Zero(act_dim, n), schedule, &chain,
                nullptr, 0.0);

  MlpTrace q_trace;
  mlp_forward(critic, stack(batch.obs, a0), &q_trace);
  const MlpGrads q_grads =
      mlp_backward(critic, q_trace, Eigen::MatrixXd::Constant(1, n, -1.0 / n));
  Eigen::MatrixXd u = q_grads.input.bottomRows(act_dim);  // dLoss/da_0

  MlpGrads total;
  for (int j = static_cast<int>(chain.size()) - 1; j >= 0; --j) {
    const ChainStepTrace& step = chain[j];
    const Eigen::MatrixXd u_z = (u.array() * step.interior).matrix();
    // One backward sweep serves twice: parameter gradients of
    // -beta * D(s, a_j, e) against u_z, and the action-input jacobian term
    // that completes dLoss/da_j = u_z - beta * (dD/da)^T u_z.
    MlpGrads step_grads = mlp_backward(denoiser, step.net, -step.beta * u_z);
    u = u_z + step_grads.input.middleRows(obs_dim, act_dim);
    if (total.weights.empty())
      total = std::move(step_grads);
    else
      total.add(step_grads);
  }
  sgd_step(denoiser, total, config.actor_rate);

  soft_update(critic_target, critic, config.tau);
  soft_update(denoiser_target, denoiser, config.tau);
}

void pretrain_denoiser(const std::vector<TrajectoryRecord>& trajectories, Mlp& denoiser,
                       int epochs, const DiffusionSchedule& schedule, double rate,
                       int batch_size, Rng& rng) {
  std::vector<const std::pair<Eigen::VectorXd, Eigen::VectorXd>*> pairs;
  for (const TrajectoryRecord& t : trajectories)
    for (const auto& step : t.steps) pairs.push_back(&step);
  if (pairs.empty() || epochs <= 0) return;

  const int act_dim = denoiser.output_size();
  const int obs_dim = denoiser.input_size() - act_dim - 1;
  const int K = schedule.steps();
  const std::size_t dataset = pairs.size();
  const std::size_t batches_per_epoch = (dataset + batch_size - 1) / batch_size;

  Eigen::MatrixXd input(denoiser.input_size(), batch_size);
  Eigen::MatrixXd noise(act_dim, batch_size);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t b = 0; b < batches_per_epoch; ++b) {
      for (int i = 0; i < batch_size; ++i) {
        const auto& [obs, action] = *pairs[rng.uniform_index(dataset)];
        if (obs.size() != obs_dim || action.size() != act_dim)
          throw std::invalid_argument("pretrain_denoiser: trajectory dimensions mismatch");
        const int k = 1 + static_cast<int>(rng.uniform_index(K));
        const double beta = schedule.at(k);
        for (int r = 0; r < act_dim; ++r) noise(r, i) = rng.gaussian();
        input.col(i).head(obs_dim) = obs;
        input.col(i).segment(obs_dim, act_dim) = action + beta * noise.col(i);
        input(obs_dim + act_dim, i) = static_cast<double>(k) / K;
      }
      MlpTrace trace;
      const Eigen::MatrixXd out = mlp_forward(denoiser, input, &trace);
      const Eigen::MatrixXd upstream = (out - noise) / batch_size;
      sgd_step(denoiser, mlp_backward(denoiser, trace, upstream), rate);
    }
  }
}

}  // namespace sagin
