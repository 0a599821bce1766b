#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "sagin/config.hpp"
#include "sagin/orchestrator.hpp"

namespace sagin {

// One experimental campaign: a cross product of methods and seeds, each cell
// trained for the same number of episodes on the same scenario.
struct ExperimentPlan {
  std::vector<PlannerChoice> methods{
      PlannerChoice::LlmShapedD3pg, PlannerChoice::FixedD3pg, PlannerChoice::LlmShapedDdpg,
      PlannerChoice::LlmShapedDqn, PlannerChoice::Greedy};
  int episodes = 1000;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  FullConfig config;
  std::filesystem::path out_dir = "out";
  int jobs = 1;                 // worker threads over (method, seed) pairs
  int summary_tail = 100;       // episodes the summary statistics average over
};

void validate(const ExperimentPlan& plan);

// Runs every (method, seed) pair and writes convergence.csv, summary.csv,
// per-pair episode logs, knowledge stores, and trained agent snapshots under
// plan.out_dir.  Same plan, same bytes: results are merged in plan order no
// matter how many worker threads ran, and every random stream derives from
// the pair seed.
void run(const ExperimentPlan& plan);

// Reads a summary.csv, prints the latency ranking and the energy of the
// shaped diffusion method relative to its fixed-coefficient variant.
// Requires all five methods; throws ConfigError listing any absentees.
void compare(const std::filesystem::path& summary_csv, std::ostream& out);

}  // namespace sagin
