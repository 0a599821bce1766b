#include "sagin/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <thread>
#include <utility>

#include "sagin/adaptive.hpp"
#include "sagin/knowledge.hpp"
#include "sagin/perceiver.hpp"
#include "sagin/planners.hpp"
#include "sagin/sim_core.hpp"

namespace sagin {
namespace {

namespace fs = std::filesystem;

// Shortest decimal form that round-trips, so CSV bytes are a pure function
// of the computed values.
std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string fixed_digits(double v, int digits) {
  std::array<char, 64> buf;
  std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
  return std::string(buf.data());
}

std::string pair_name(PlannerChoice method, std::uint64_t seed) {
  return std::string(to_string(method)) + "_" + std::to_string(seed);
}

bool uses_diffusion(PlannerChoice method) {
  return method == PlannerChoice::LlmShapedD3pg || method == PlannerChoice::FixedD3pg;
}

double min_uav_energy(const World& world) {
  double lowest = 1.0;
  for (const Node& node : world.nodes)
    if (world.is_uav(node.id)) lowest = std::min(lowest, node.energy_fraction);
  return lowest;
}

struct PairResult {
  std::vector<double> episode_reward;
  std::vector<double> mean_latency_ms;
  std::vector<double> energy_norm;  // per-episode UAV energy over energy_ref
};

PairResult run_pair(const ExperimentPlan& plan, const World& world, PlannerChoice method,
                    std::uint64_t seed) {
  const FullConfig& cfg = plan.config;
  const std::string name = pair_name(method, seed);

  // Each pair owns its knowledge directory; starting fresh keeps a rerun of
  // the same plan byte-identical instead of appending onto old streams.
  const fs::path knowledge_dir = plan.out_dir / "knowledge" / name;
  fs::remove_all(knowledge_dir);
  KnowledgeStore store(knowledge_dir);

  std::ofstream log(plan.out_dir / "logs" / (name + ".log"), std::ios::trunc);

  auto planner =
      select_planner(method, PlannerMode::Train, cfg.agent, world,
                     mix_seed(seed, 2 * static_cast<std::uint64_t>(method) + 1));

  // Diffusion planners warm-start from the matching greedy rollouts.  The
  // greedy pairs of this plan always finish first, so the store is complete
  // by the time this runs.
  const bool greedy_planned =
      std::find(plan.methods.begin(), plan.methods.end(), PlannerChoice::Greedy) !=
      plan.methods.end();
  if (uses_diffusion(method) && greedy_planned) {
    const KnowledgeStore greedy_store(plan.out_dir / "knowledge" /
                                      pair_name(PlannerChoice::Greedy, seed));
    planner->warm_start(greedy_store.top_trajectories(cfg.agent.pretrain_top_k));
  }

  AdaptiveLearner learner(cfg.intent, cfg.kpi_window);
  ShapingRuleTable live_table = cfg.shaping;
  RuleTableAdvisor advisor;
  std::vector<KpiEntry> history;
  history.reserve(static_cast<std::size_t>(plan.episodes));

  PairResult result;
  result.episode_reward.reserve(static_cast<std::size_t>(plan.episodes));
  result.mean_latency_ms.reserve(static_cast<std::size_t>(plan.episodes));
  result.energy_norm.reserve(static_cast<std::size_t>(plan.episodes));

  for (int episode = 0; episode < plan.episodes; ++episode) {
    EnvState env = reset(world, mix_seed(seed, 2 * static_cast<std::uint64_t>(episode)),
                         RewardConfig{});

    const Telemetry telemetry = monitor(env);
    log << "episode=" << episode << " phase=monitor min_uav_energy="
        << format_double(min_uav_energy(env.world)) << "\n";

    const SemanticState semantic = analyze(telemetry, cfg.thresholds, world);
    log << "episode=" << episode << " phase=analyze level="
        << to_string(semantic.uav_energy_level) << "\n";

    if (auto suggestion = advisor.propose(semantic, cfg.intent, history)) {
      const SuggestionOutcome outcome = apply_suggestion(live_table, *suggestion);
      if (outcome.adopted) live_table = outcome.table;
      ProvenanceRecord advice;
      advice.episode = episode;
      advice.method = to_string(method);
      advice.seed = seed;
      advice.kind = "advisor";
      advice.reason = outcome.reason;
      advice.lambda_base = live_table.lambda_base;
      advice.lambda = shape_reward(semantic, cfg.intent, live_table, cfg.scenario.latency_ref_ms,
                                   cfg.scenario.energy_ref, episode)
                          .lambda;
      store.append(advice);
    }

    // The fixed variant keeps the configured base coefficient for the whole
    // run; everything else shapes per episode from the live table.
    RewardConfig reward;
    if (method == PlannerChoice::FixedD3pg) {
      reward.lambda = cfg.shaping.lambda_base;
      reward.lambda_max = cfg.shaping.lambda_max;
      reward.latency_ref_ms = cfg.scenario.latency_ref_ms;
      reward.energy_ref = cfg.scenario.energy_ref;
      reward.provenance.episode = episode;
      reward.provenance.semantic_label = to_string(semantic.uav_energy_level);
      reward.provenance.rule = "fixed coefficient";
    } else {
      reward = shape_reward(semantic, cfg.intent, live_table, cfg.scenario.latency_ref_ms,
                            cfg.scenario.energy_ref, episode);
    }
    env.reward = reward;
    log << "episode=" << episode << " phase=plan lambda=" << format_double(reward.lambda)
        << "\n";

    planner->begin_episode(episode);
    Eigen::VectorXd obs = observe(env, semantic);

    double total_reward = 0.0;
    double latency_sum = 0.0;
    double energy_sum = 0.0;
    int deadlines_met = 0;
    const bool keep_trajectory = method == PlannerChoice::Greedy;
    TrajectoryRecord trajectory;
    trajectory.episode = episode;

    while (!env.done()) {
      const ActChoice choice = planner->act(env, obs);
      if (keep_trajectory) trajectory.steps.emplace_back(obs, choice.continuous_action);
      const StepOutcome outcome = step(env, choice.decision);
      Eigen::VectorXd next_obs = observe(env, semantic);
      planner->observe(obs, choice, outcome.reward, next_obs, env.done());

      total_reward += outcome.reward;
      latency_sum += outcome.latency_ms;
      energy_sum += outcome.uav_energy_spent;
      deadlines_met += outcome.deadline_met ? 1 : 0;
      obs = std::move(next_obs);
    }
    const int steps = static_cast<int>(env.tasks.size());
    log << "episode=" << episode << " phase=execute steps=" << steps
        << " reward=" << format_double(total_reward) << "\n";

    KpiEntry kpi;
    kpi.mean_latency_ms = latency_sum / steps;
    kpi.min_uav_end_energy = min_uav_energy(env.world);
    kpi.episode_reward = total_reward;
    history.push_back(kpi);

    if (auto outcome = learner.on_episode(episode, kpi, live_table)) {
      if (outcome->table_changed && method != PlannerChoice::FixedD3pg) {
        live_table = outcome->table;
        ProvenanceRecord refinement;
        refinement.episode = episode;
        refinement.method = to_string(method);
        refinement.seed = seed;
        refinement.kind = "refine";
        refinement.reason = outcome->reason;
        refinement.lambda_base = live_table.lambda_base;
        refinement.lambda =
            shape_reward(semantic, cfg.intent, live_table, cfg.scenario.latency_ref_ms,
                         cfg.scenario.energy_ref, episode + 1)
                .lambda;
        store.append(refinement);
      }
    }

    EpisodeRecord record;
    record.episode = episode;
    record.method = to_string(method);
    record.seed = seed;
    record.semantic_summary = render_summary(semantic);
    record.lambda = reward.lambda;
    record.episode_reward = total_reward;
    record.mean_latency_ms = kpi.mean_latency_ms;
    record.total_uav_energy = energy_sum;
    record.deadline_met_count = deadlines_met;
    store.append(record);
    if (keep_trajectory) {
      trajectory.episode_reward = total_reward;
      store.append(trajectory);
    }
    log << "episode=" << episode << " phase=knowledge mean_latency_ms="
        << format_double(kpi.mean_latency_ms) << " deadline_met=" << deadlines_met << "\n";

    result.episode_reward.push_back(total_reward);
    result.mean_latency_ms.push_back(kpi.mean_latency_ms);
    result.energy_norm.push_back(energy_sum / cfg.scenario.energy_ref);
  }

  if (planner->learns()) {
    const fs::path agent_dir = plan.out_dir / "agents" / name;
    fs::create_directories(agent_dir);
    planner->save(agent_dir);
  }
  return result;
}

}  // namespace

void validate(const ExperimentPlan& plan) {
  if (plan.methods.empty()) throw ConfigError("plan: methods must not be empty");
  if (plan.episodes < 1) throw ConfigError("plan: episodes must be at least 1");
  if (plan.seeds.empty()) throw ConfigError("plan: seeds must not be empty");
  if (plan.jobs < 1) throw ConfigError("plan: jobs must be at least 1");
  if (plan.summary_tail < 1) throw ConfigError("plan: summary_tail must be at least 1");
  if (plan.out_dir.empty()) throw ConfigError("plan: output directory must be set");

  for (std::size_t i = 0; i < plan.methods.size(); ++i)
    for (std::size_t j = i + 1; j < plan.methods.size(); ++j)
      if (plan.methods[i] == plan.methods[j])
        throw ConfigError(std::string("plan: duplicate method ") + to_string(plan.methods[i]));
  for (std::size_t i = 0; i < plan.seeds.size(); ++i)
    for (std::size_t j = i + 1; j < plan.seeds.size(); ++j)
      if (plan.seeds[i] == plan.seeds[j])
        throw ConfigError("plan: duplicate seed " + std::to_string(plan.seeds[i]));

  validate(plan.config);
}

void run(const ExperimentPlan& plan) {
  validate(plan);
  const World world = build_scenario(plan.config.scenario);

  fs::create_directories(plan.out_dir / "knowledge");
  fs::create_directories(plan.out_dir / "logs");
  fs::create_directories(plan.out_dir / "agents");

  struct PairTask {
    std::size_t method_index;
    std::size_t seed_index;
  };
  const std::size_t seed_count = plan.seeds.size();

  // Greedy pairs run first so their trajectory stores exist before any
  // diffusion planner asks to warm-start from them.
  std::vector<PairTask> greedy_pairs;
  std::vector<PairTask> other_pairs;
  for (std::size_t m = 0; m < plan.methods.size(); ++m)
    for (std::size_t s = 0; s < seed_count; ++s)
      (plan.methods[m] == PlannerChoice::Greedy ? greedy_pairs : other_pairs)
          .push_back({m, s});

  std::vector<PairResult> results(plan.methods.size() * seed_count);

  const auto run_group = [&](const std::vector<PairTask>& group) {
    if (group.empty()) return;
    const auto run_one = [&](const PairTask& task) {
      results[task.method_index * seed_count + task.seed_index] =
          run_pair(plan, world, plan.methods[task.method_index], plan.seeds[task.seed_index]);
    };
    const int workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(plan.jobs), group.size()));
    if (workers <= 1) {
      for (const PairTask& task : group) run_one(task);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < group.size();) run_one(group[i]);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& error : errors)
      if (error) std::rethrow_exception(error);
  };
  run_group(greedy_pairs);
  run_group(other_pairs);

  // Merge in plan order regardless of which worker finished when, so the
  // bytes cannot depend on scheduling.
  std::ofstream convergence(plan.out_dir / "convergence.csv", std::ios::trunc);
  convergence << "episode,method,seed,episode_reward\n";
  for (std::size_t m = 0; m < plan.methods.size(); ++m) {
    for (std::size_t s = 0; s < seed_count; ++s) {
      const PairResult& pair = results[m * seed_count + s];
      for (int episode = 0; episode < plan.episodes; ++episode)
        convergence << episode << ',' << to_string(plan.methods[m]) << ',' << plan.seeds[s]
                    << ',' << format_double(pair.episode_reward[episode]) << '\n';
    }
  }

  const int tail = std::min(plan.summary_tail, plan.episodes);
  std::ofstream summary(plan.out_dir / "summary.csv", std::ios::trunc);
  summary << "method,mean_latency_ms,mean_uav_energy_norm\n";
  for (std::size_t m = 0; m < plan.methods.size(); ++m) {
    double latency_sum = 0.0;
    double energy_sum = 0.0;
    for (std::size_t s = 0; s < seed_count; ++s) {
      const PairResult& pair = results[m * seed_count + s];
      for (int episode = plan.episodes - tail; episode < plan.episodes; ++episode) {
        latency_sum += pair.mean_latency_ms[episode];
        energy_sum += pair.energy_norm[episode];
      }
    }
    const double samples = static_cast<double>(tail) * static_cast<double>(seed_count);
    summary << to_string(plan.methods[m]) << ',' << format_double(latency_sum / samples) << ','
            << format_double(energy_sum / samples) << '\n';
  }
}

void compare(const std::filesystem::path& summary_csv, std::ostream& out) {
  std::ifstream in(summary_csv);
  if (!in) throw IoError("compare: cannot open " + summary_csv.string());

  std::string line;
  if (!std::getline(in, line) || line != "method,mean_latency_ms,mean_uav_energy_norm")
    throw IoError("compare: " + summary_csv.string() + " has an unexpected header");

  struct Row {
    std::string method;
    double latency = 0.0;
    double energy = 0.0;
  };
  std::vector<Row> rows;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::size_t first = line.find(',');
    const std::size_t second = first == std::string::npos ? first : line.find(',', first + 1);
    if (second == std::string::npos)
      throw IoError("compare: " + summary_csv.string() + " line " +
                    std::to_string(line_number) + ": expected three columns");
    Row row;
    row.method = line.substr(0, first);
    try {
      row.latency = std::stod(line.substr(first + 1, second - first - 1));
      row.energy = std::stod(line.substr(second + 1));
    } catch (const std::exception&) {
      throw IoError("compare: " + summary_csv.string() + " line " +
                    std::to_string(line_number) + ": malformed number");
    }
    rows.push_back(std::move(row));
  }

  constexpr std::array<PlannerChoice, 5> kAllMethods{
      PlannerChoice::LlmShapedD3pg, PlannerChoice::FixedD3pg, PlannerChoice::LlmShapedDdpg,
      PlannerChoice::LlmShapedDqn, PlannerChoice::Greedy};
  std::string missing;
  for (const PlannerChoice method : kAllMethods) {
    const std::string name = to_string(method);
    const bool present = std::any_of(rows.begin(), rows.end(),
                                     [&](const Row& row) { return row.method == name; });
    if (!present) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  }
  if (!missing.empty()) throw ConfigError("compare: summary is missing methods: " + missing);

  std::vector<Row> ranked = rows;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Row& a, const Row& b) { return a.latency < b.latency; });

  out << "latency ranking (mean ms over the summarised episodes):\n";
  for (std::size_t i = 0; i < ranked.size(); ++i)
    out << "  " << (i + 1) << ". " << ranked[i].method << "  "
        << fixed_digits(ranked[i].latency, 3) << " ms\n";

  const auto energy_of = [&](PlannerChoice method) {
    const std::string name = to_string(method);
    for (const Row& row : rows)
      if (row.method == name) return row.energy;
    return 0.0;  // unreachable: presence was checked above
  };
  const double shaped = energy_of(PlannerChoice::LlmShapedD3pg);
  const double fixed = energy_of(PlannerChoice::FixedD3pg);
  if (fixed > 0.0) {
    const double ratio = shaped / fixed;
    out << "LlmShapedD3pg mean UAV energy is " << fixed_digits(ratio, 2) << "x FixedD3pg ("
        << fixed_digits((1.0 - ratio) * 100.0, 1) << "% reduction)\n";
  } else {
    out << "FixedD3pg mean UAV energy is zero; the energy ratio is undefined\n";
  }
}

}  // namespace sagin
