#include "sagin/planners.hpp"

#include <string>
#include <utility>

#include "sagin/rl/d3pg.hpp"
#include "sagin/rl/ddpg.hpp"
#include "sagin/rl/dqn.hpp"
#include "sagin/rl/greedy.hpp"
#include "sagin/rl/mlp.hpp"
#include "sagin/rl/replay.hpp"

namespace sagin {
namespace {

Mlp load_artifact(const std::filesystem::path& dir, const std::string& file) {
  const std::filesystem::path path = dir / file;
  if (!std::filesystem::exists(path))
    throw ConfigError("select_planner: no trained artifact at " + path.string());
  return load_mlp(path);
}

class GreedyPlanner final : public Planner {
 public:
  ActChoice act(const EnvState& env, const Eigen::VectorXd&) override {
    ActChoice choice;
    choice.decision = greedy_select(env);
    choice.continuous_action = encode_decision(choice.decision, env.world);
    return choice;
  }
  bool learns() const override { return false; }
  void save(const std::filesystem::path&) const override {}
};

// Shared scaffolding for the learning methods: seeded rng, episode counter
// for anneals, and the train cadence gate.
class LearnerBase : public Planner {
 protected:
  LearnerBase(AgentConfig config, PlannerMode mode, std::uint64_t seed)
      : config_(std::move(config)), mode_(mode), rng_(seed) {}

  bool training() const { return mode_ == PlannerMode::Train; }

  // Counts environment steps; true when the buffer is warm and the cadence
  // lands on this step.
  bool due_for_update(std::size_t buffer_size) {
    ++step_count_;
    if (static_cast<int>(buffer_size) < config_.warmup_transitions) return false;
    return step_count_ % config_.train_every_steps == 0;
  }

  AgentConfig config_;
  PlannerMode mode_;
  Rng rng_;
  int episode_ = 0;
  long long step_count_ = 0;

 public:
  void begin_episode(int episode) override { episode_ = episode; }
};

class DqnPlanner final : public LearnerBase {
 public:
  DqnPlanner(const AgentConfig& config, PlannerMode mode, const World& world, std::uint64_t seed,
             const std::filesystem::path& artifact_dir)
      : LearnerBase(config, mode, seed),
        buffer_(static_cast<std::size_t>(config.replay_capacity)) {
    const int catalogue = static_cast<int>(enumerate_discrete_actions(world).size());
    const int width = config.hidden_width;
    if (training()) {
      q_net_ = make_mlp({observation_size(world), width, width, catalogue},
                        Mlp::Output::Identity, rng_);
    } else {
      q_net_ = load_artifact(artifact_dir, "q_net.bin");
    }
    target_net_ = q_net_;
  }

  ActChoice act(const EnvState& env, const Eigen::VectorXd& obs) override {
    const double epsilon =
        training() ? annealed(config_.dqn_epsilon_start, config_.dqn_epsilon_end,
                              config_.dqn_epsilon_decay_episodes, episode_)
                   : 0.0;
    ActChoice choice;
    choice.discrete_index = dqn_select(q_net_, obs, epsilon, rng_);
    choice.decision = decode_discrete(choice.discrete_index, env);
    return choice;
  }

  void observe(const Eigen::VectorXd& obs, const ActChoice& choice, double reward,
               const Eigen::VectorXd& next_obs, bool done) override {
    if (!training()) return;
    buffer_.push({obs, choice.discrete_index, reward, next_obs, done});
    if (due_for_update(buffer_.size()))
      dqn_train_step(buffer_, q_net_, target_net_, config_, rng_);
  }

  void save(const std::filesystem::path& dir) const override {
    save_mlp(q_net_, dir / "q_net.bin");
  }

 private:
  Mlp q_net_;
  Mlp target_net_;
  ReplayBuffer<int> buffer_;
};

class DdpgPlanner final : public LearnerBase {
 public:
  DdpgPlanner(const AgentConfig& config, PlannerMode mode, const World& world, std::uint64_t seed,
              const std::filesystem::path& artifact_dir)
      : LearnerBase(config, mode, seed),
        buffer_(static_cast<std::size_t>(config.replay_capacity)) {
    const int obs = observation_size(world);
    const int act = continuous_action_size(world);
    const int width = config.hidden_width;
    if (training()) {
      actor_ = make_mlp({obs, width, width, act}, Mlp::Output::Tanh, rng_);
      critic_ = make_mlp({obs + act, width, width, 1}, Mlp::Output::Identity, rng_);
    } else {
      actor_ = load_artifact(artifact_dir, "actor.bin");
      critic_ = make_mlp({obs + act, width, width, 1}, Mlp::Output::Identity, rng_);
    }
    actor_target_ = actor_;
    critic_target_ = critic_;
  }

  ActChoice act(const EnvState& env, const Eigen::VectorXd& obs) override {
    const double sigma = training() ? config_.ddpg_sigma : 0.0;
    ActChoice choice;
    choice.continuous_action = ddpg_select(actor_, obs, sigma, rng_);
    choice.decision = decode_continuous(choice.continuous_action, env);
    return choice;
  }

  void observe(const Eigen::VectorXd& obs, const ActChoice& choice, double reward,
               const Eigen::VectorXd& next_obs, bool done) override {
    if (!training()) return;
    buffer_.push({obs, choice.continuous_action, reward, next_obs, done});
    if (due_for_update(buffer_.size()))
      ddpg_train_step(buffer_, actor_, critic_, actor_target_, critic_target_, config_, rng_);
  }

  void save(const std::filesystem::path& dir) const override {
    save_mlp(actor_, dir / "actor.bin");
  }

 private:
  Mlp actor_;
  Mlp critic_;
  Mlp actor_target_;
  Mlp critic_target_;
  ReplayBuffer<Eigen::VectorXd> buffer_;
};

class D3pgPlanner final : public LearnerBase {
 public:
  D3pgPlanner(const AgentConfig& config, PlannerMode mode, const World& world, std::uint64_t seed,
              const std::filesystem::path& artifact_dir)
      : LearnerBase(config, mode, seed),
        schedule_(linear_schedule(config.diffusion_steps, config.beta_min, config.beta_max)),
        buffer_(static_cast<std::size_t>(config.replay_capacity)) {
    const int obs = observation_size(world);
    const int act = continuous_action_size(world);
    const int width = config.hidden_width;
    if (training()) {
      denoiser_ = make_mlp({obs + act + 1, width, width, act},
                           Mlp::Output::Identity, rng_);
      critic_ = make_mlp({obs + act, width, width, 1}, Mlp::Output::Identity, rng_);
    } else {
      denoiser_ = load_artifact(artifact_dir, "denoiser.bin");
      critic_ = make_mlp({obs + act, width, width, 1}, Mlp::Output::Identity, rng_);
    }
    denoiser_target_ = denoiser_;
    critic_target_ = critic_;
  }

  ActChoice act(const EnvState& env, const Eigen::VectorXd& obs) override {
    ActChoice choice;
    if (training()) {
      const double sigma = annealed(config_.d3pg_sigma_start, config_.d3pg_sigma_end,
                                    config_.d3pg_sigma_decay_episodes, episode_);
      choice.continuous_action =
          d3pg_sample(denoiser_, obs, schedule_, SampleMode::Explore, rng_, sigma);
    } else {
      choice.continuous_action = d3pg_sample(denoiser_, obs, schedule_, SampleMode::Eval, rng_);
    }
    choice.decision = decode_continuous(choice.continuous_action, env);
    return choice;
  }

  void observe(const Eigen::VectorXd& obs, const ActChoice& choice, double reward,
               const Eigen::VectorXd& next_obs, bool done) override {
    if (!training()) return;
    buffer_.push({obs, choice.continuous_action, reward, next_obs, done});
    if (due_for_update(buffer_.size()))
      d3pg_train_step(buffer_, denoiser_, critic_, denoiser_target_, critic_target_, config_,
                      schedule_, rng_);
  }

  void warm_start(const std::vector<TrajectoryRecord>& trajectories) override {
    if (!training()) return;
    pretrain_denoiser(trajectories, denoiser_, config_.pretrain_epochs, schedule_,
                      config_.pretrain_rate, config_.batch_size, rng_);
    denoiser_target_ = denoiser_;
  }

  void save(const std::filesystem::path& dir) const override {
    save_mlp(denoiser_, dir / "denoiser.bin");
  }

 private:
  DiffusionSchedule schedule_;
  Mlp denoiser_;
  Mlp critic_;
  Mlp denoiser_target_;
  Mlp critic_target_;
  ReplayBuffer<Eigen::VectorXd> buffer_;
};

}  // namespace

Eigen::VectorXd encode_decision(const PlacementDecision& decision, const World& world) {
  Eigen::VectorXd action = Eigen::VectorXd::Constant(continuous_action_size(world), -1.0);
  action(decision.processing_node) = 1.0;

  // Relay preference matters only for satellite processing; ground access
  // encodes high, UAV access low.  Off-satellite placements store the inert
  // high value.
  const bool via_uav_relay =
      world.is_satellite(decision.processing_node) && world.is_uav(decision.access_node);
  action(world.node_count()) = via_uav_relay ? -1.0 : 1.0;

  const double span = world.config.power_max_watts - world.config.power_min_watts;
  const double unit = span > 0.0
      ? (decision.power_watts - world.config.power_min_watts) / span
      : 0.5;
  action(world.node_count() + 1) = 2.0 * unit - 1.0;
  return action;
}

std::unique_ptr<Planner> select_planner(PlannerChoice choice, PlannerMode mode,
                                        const AgentConfig& config, const World& world,
                                        std::uint64_t agent_seed,
                                        const std::filesystem::path& artifact_dir) {
  switch (choice) {
    case PlannerChoice::Greedy:
      return std::make_unique<GreedyPlanner>();
    case PlannerChoice::LlmShapedDqn:
      return std::make_unique<DqnPlanner>(config, mode, world, agent_seed, artifact_dir);
    case PlannerChoice::LlmShapedDdpg:
      return std::make_unique<DdpgPlanner>(config, mode, world, agent_seed, artifact_dir);
    case PlannerChoice::LlmShapedD3pg:
    case PlannerChoice::FixedD3pg:
      return std::make_unique<D3pgPlanner>(config, mode, world, agent_seed, artifact_dir);
  }
  throw ConfigError("select_planner: unhandled planner choice");
}

}  // namespace sagin
