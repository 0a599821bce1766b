#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sagin/errors.hpp"

namespace sagin {

// Every persisted line carries this schema version.
inline constexpr const char* kKnowledgeSchemaVersion = "1";

// One episode's outcome as logged by the harness.
struct EpisodeRecord {
  int episode = 0;
  std::string method;
  std::uint64_t seed = 0;
  std::string semantic_summary;
  double lambda = 0.0;
  double episode_reward = 0.0;
  double mean_latency_ms = 0.0;
  double total_uav_energy = 0.0;  // battery fraction charged to rewards
  int deadline_met_count = 0;
};

// An audit entry for every reward-configuration change (adaptive refinement
// or advisor adoption/rejection).  lambda_base is the value in force after
// the event, so replaying the stream reconstructs the table.
struct ProvenanceRecord {
  int episode = 0;
  std::string method;
  std::uint64_t seed = 0;
  std::string kind;    // "refine" or "advisor"
  std::string reason;
  double lambda_base = 0.0;
  double lambda = 0.0;  // coefficient shaped for the following episode
};

// A full episode rollout kept for diffusion pretraining.
struct TrajectoryRecord {
  int episode = 0;
  double episode_reward = 0.0;
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> steps;  // (obs, action)
};

struct EpisodeFilter {
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;
  std::optional<std::pair<int, int>> episode_range;  // inclusive
};

// Append-only JSON Lines persistence, one file per concern under a single
// directory.  The trajectory stream is the exception to pure appending: it
// rotates generations on disk so at least the newest kTrajectoryCap records
// survive while the total stays bounded.
class KnowledgeStore {
 public:
  static constexpr int kTrajectoryCap = 200;

  explicit KnowledgeStore(const std::filesystem::path& directory);

  void append(const EpisodeRecord& record);
  void append(const ProvenanceRecord& record);
  void append(const TrajectoryRecord& record);

  std::vector<EpisodeRecord> load_episodes(const EpisodeFilter& filter = {}) const;
  std::vector<ProvenanceRecord> load_provenance() const;

  // Newest kTrajectoryCap trajectories in append order.
  std::vector<TrajectoryRecord> load_trajectories() const;

  // k best trajectories by episode reward, ties to the earliest appended.
  std::vector<TrajectoryRecord> top_trajectories(int k) const;

  const std::filesystem::path& directory() const { return directory_; }

 private:
  std::filesystem::path directory_;
  std::filesystem::path episodes_path_;
  std::filesystem::path provenance_path_;
  std::filesystem::path trajectories_path_;
  std::filesystem::path trajectories_prev_path_;
  int active_trajectory_count_ = 0;
};

}  // namespace sagin
