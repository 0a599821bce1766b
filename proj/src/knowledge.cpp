#include "sagin/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>

namespace sagin {
namespace {

using nlohmann::json;

void require_finite(double x, const char* field) {
  if (!std::isfinite(x))
    throw std::invalid_argument(std::string("knowledge append: non-finite ") + field);
}

json vector_to_json(const Eigen::VectorXd& v) {
  json array = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) array.push_back(v[i]);
  return array;
}

Eigen::VectorXd vector_from_json(const json& array) {
  Eigen::VectorXd v(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) v[static_cast<Eigen::Index>(i)] = array[i];
  return v;
}

void append_line(const std::filesystem::path& path, const json& object) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("knowledge store: cannot open " + path.string() + " for append");
  out << object.dump() << '\n';
  if (!out) throw IoError("knowledge store: write failed on " + path.string());
}

// Parses every line of a JSONL file, reporting the first malformed line by
// number.  Missing files read as empty streams.
std::vector<json> read_lines(const std::filesystem::path& path) {
  std::vector<json> objects;
  std::ifstream in(path);
  if (!in) return objects;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    json object = json::parse(line, nullptr, false);
    if (object.is_discarded())
      throw IoError(path.filename().string() + " line " + std::to_string(number) +
                    ": malformed JSON");
    objects.push_back(std::move(object));
  }
  return objects;
}

int count_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return 0;
  int count = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++count;
  return count;
}

json to_json(const EpisodeRecord& r) {
  return json{{"v", kKnowledgeSchemaVersion}, {"episode", r.episode},       {"method", r.method},
              {"seed", r.seed},               {"semantic", r.semantic_summary},
              {"lambda", r.lambda},           {"episode_reward", r.episode_reward},
              {"mean_latency_ms", r.mean_latency_ms}, {"total_uav_energy", r.total_uav_energy},
              {"deadline_met", r.deadline_met_count}};
}

json to_json(const ProvenanceRecord& r) {
  return json{{"v", kKnowledgeSchemaVersion}, {"episode", r.episode}, {"method", r.method},
              {"seed", r.seed},               {"kind", r.kind},       {"reason", r.reason},
              {"lambda_base", r.lambda_base}, {"lambda", r.lambda}};
}

json to_json(const TrajectoryRecord& r) {
  json steps = json::array();
  for (const auto& [obs, action] : r.steps)
    steps.push_back(json{{"obs", vector_to_json(obs)}, {"action", vector_to_json(action)}});
  return json{{"v", kKnowledgeSchemaVersion},
              {"episode", r.episode},
              {"episode_reward", r.episode_reward},
              {"steps", std::move(steps)}};
}

EpisodeRecord episode_from_json(const json& o) {
  EpisodeRecord r;
  r.episode = o.at("episode");
  r.method = o.at("method");
  r.seed = o.at("seed");
  r.semantic_summary = o.at("semantic");
  r.lambda = o.at("lambda");
  r.episode_reward = o.at("episode_reward");
  r.mean_latency_ms = o.at("mean_latency_ms");
  r.total_uav_energy = o.at("total_uav_energy");
  r.deadline_met_count = o.at("deadline_met");
  return r;
}

ProvenanceRecord provenance_from_json(const json& o) {
  ProvenanceRecord r;
  r.episode = o.at("episode");
  r.method = o.at("method");
  r.seed = o.at("seed");
  r.kind = o.at("kind");
  r.reason = o.at("reason");
  r.lambda_base = o.at("lambda_base");
  r.lambda = o.at("lambda");
  return r;
}

TrajectoryRecord trajectory_from_json(const json& o) {
  TrajectoryRecord r;
  r.episode = o.at("episode");
  r.episode_reward = o.at("episode_reward");
  for (const json& step : o.at("steps"))
    r.steps.emplace_back(vector_from_json(step.at("obs")), vector_from_json(step.at("action")));
  return r;
}

}  // namespace

KnowledgeStore::KnowledgeStore(const std::filesystem::path& directory)
    : directory_(directory),
      episodes_path_(directory / "episodes.jsonl"),
      provenance_path_(directory / "provenance.jsonl"),
      trajectories_path_(directory / "trajectories.jsonl"),
      trajectories_prev_path_(directory / "trajectories.prev.jsonl") {
  std::filesystem::create_directories(directory_);
  active_trajectory_count_ = count_lines(trajectories_path_);
}

void KnowledgeStore::append(const EpisodeRecord& record) {
  require_finite(record.lambda, "lambda");
  require_finite(record.episode_reward, "episode_reward");
  require_finite(record.mean_latency_ms, "mean_latency_ms");
  require_finite(record.total_uav_energy, "total_uav_energy");
  append_line(episodes_path_, to_json(record));
}

void KnowledgeStore::append(const ProvenanceRecord& record) {
  require_finite(record.lambda_base, "lambda_base");
  require_finite(record.lambda, "lambda");
  append_line(provenance_path_, to_json(record));
}

void KnowledgeStore::append(const TrajectoryRecord& record) {
  require_finite(record.episode_reward, "episode_reward");
  if (active_trajectory_count_ >= kTrajectoryCap) {
    // Rotate generations: the previous generation falls off the ring.
    std::filesystem::remove(trajectories_prev_path_);
    std::filesystem::rename(trajectories_path_, trajectories_prev_path_);
    active_trajectory_count_ = 0;
  }
  append_line(trajectories_path_, to_json(record));
  ++active_trajectory_count_;
}

std::vector<EpisodeRecord> KnowledgeStore::load_episodes(const EpisodeFilter& filter) const {
  std::vector<EpisodeRecord> records;
  for (const json& o : read_lines(episodes_path_)) {
    EpisodeRecord r = episode_from_json(o);
    if (filter.method && r.method != *filter.method) continue;
    if (filter.seed && r.seed != *filter.seed) continue;
    if (filter.episode_range &&
        (r.episode < filter.episode_range->first || r.episode > filter.episode_range->second))
      continue;
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ProvenanceRecord> KnowledgeStore::load_provenance() const {
  std::vector<ProvenanceRecord> records;
  for (const json& o : read_lines(provenance_path_)) records.push_back(provenance_from_json(o));
  return records;
}

std::vector<TrajectoryRecord> KnowledgeStore::load_trajectories() const {
  std::vector<TrajectoryRecord> records;
  for (const auto* path : {&trajectories_prev_path_, &trajectories_path_})
    for (const json& o : read_lines(*path)) records.push_back(trajectory_from_json(o));
  if (static_cast<int>(records.size()) > kTrajectoryCap)
    records.erase(records.begin(), records.end() - kTrajectoryCap);
  return records;
}

std::vector<TrajectoryRecord> KnowledgeStore::top_trajectories(int k) const {
  std::vector<TrajectoryRecord> records = load_trajectories();
  std::stable_sort(records.begin(), records.end(),
                   [](const TrajectoryRecord& a, const TrajectoryRecord& b) {
                     return a.episode_reward > b.episode_reward;
                   });
  if (k < static_cast<int>(records.size())) records.resize(std::max(k, 0));
  return records;
}

}  // namespace sagin
