#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "sagin/harness.hpp"
#include <CLI11.hpp>

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t comma = text.find(',', begin);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    if (end > begin) parts.push_back(text.substr(begin, end - begin));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return parts;
}

std::vector<sagin::PlannerChoice> parse_methods(const std::string& csv) {
  std::vector<sagin::PlannerChoice> methods;
  for (const std::string& name : split_list(csv)) {
    const auto choice = sagin::parse_planner_choice(name);
    if (!choice) throw sagin::ConfigError("unknown method: " + name);
    methods.push_back(*choice);
  }
  return methods;
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& token : split_list(csv)) {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      seeds.push_back(static_cast<std::uint64_t>(value));
    } catch (const std::exception&) {
      throw sagin::ConfigError("invalid seed: " + token);
    }
  }
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-air-ground task offloading: training harness and report tool"};
  app.require_subcommand(1);

  std::string config_path;
  std::string methods_csv = "LlmShapedD3pg,FixedD3pg,LlmShapedDdpg,LlmShapedDqn,Greedy";
  std::string seeds_csv = "0,1,2,3,4";
  std::string out_dir = "out";
  int episodes = 1000;
  int jobs = 1;

  CLI::App* run_cmd = app.add_subcommand("run", "Run the (method, seed) grid and write CSVs");
  run_cmd->add_option("--config", config_path, "JSON config file; built-in defaults when omitted");
  run_cmd->add_option("--methods", methods_csv, "comma-separated method list");
  run_cmd->add_option("--episodes", episodes, "episodes per (method, seed) pair");
  run_cmd->add_option("--seeds", seeds_csv, "comma-separated seed list");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--jobs", jobs, "worker threads over pairs; never changes output bytes");

  std::string summary_path;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Rank methods from a summary.csv and report relative energy");
  compare_cmd->add_option("--summary", summary_path, "path to summary.csv")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      sagin::ExperimentPlan plan;
      if (!config_path.empty()) plan.config = sagin::load_config(config_path);
      plan.methods = parse_methods(methods_csv);
      plan.episodes = episodes;
      plan.seeds = parse_seeds(seeds_csv);
      plan.out_dir = out_dir;
      plan.jobs = jobs;
      sagin::run(plan);
      std::cout << "wrote " << (plan.out_dir / "convergence.csv").string() << " and "
                << (plan.out_dir / "summary.csv").string() << "\n";
    } else {
      sagin::compare(summary_path, std::cout);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
