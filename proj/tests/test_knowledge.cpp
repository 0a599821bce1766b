#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include "sagin/knowledge.hpp"
#include "sagin/rng.hpp"

using namespace sagin;
namespace fs = std::filesystem;

namespace {

// Each test gets its own scratch directory under the system temp root.
fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sagin_knowledge_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

EpisodeRecord make_episode(int episode, const std::string& method = "Greedy",
                           std::uint64_t seed = 1) {
  EpisodeRecord r;
  r.episode = episode;
  r.method = method;
  r.seed = seed;
  r.semantic_summary = "UAV cluster energy adequate; satellite backup available";
  r.lambda = 1.0;
  r.episode_reward = -50.0 - episode;
  r.mean_latency_ms = 900.0 + episode;
  r.total_uav_energy = 0.01 * episode;
  r.deadline_met_count = 50;
  return r;
}

TrajectoryRecord make_trajectory(int episode, double reward, int steps = 2) {
  TrajectoryRecord t;
  t.episode = episode;
  t.episode_reward = reward;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXd obs = Eigen::VectorXd::Constant(4, 0.25 * s + 0.01 * episode);
    Eigen::VectorXd action = Eigen::VectorXd::Constant(3, -0.5 + 0.1 * s);
    t.steps.emplace_back(obs, action);
  }
  return t;
}

}  // namespace

TEST_CASE("episode records round-trip bit-exactly") {
  KnowledgeStore store(scratch_dir("episodes_roundtrip"));

  EpisodeRecord original = make_episode(3, "LlmShapedD3pg", 42);
  original.lambda = 0.1 + 0.2;  // not exactly representable: 0.30000000000000004
  original.episode_reward = -123.456789012345678;
  store.append(original);

  const auto loaded = store.load_episodes();
  REQUIRE(loaded.size() == 1);
  const EpisodeRecord& r = loaded[0];
  CHECK(r.episode == 3);
  CHECK(r.method == "LlmShapedD3pg");
  CHECK(r.seed == 42);
  CHECK(r.semantic_summary == original.semantic_summary);
  CHECK(r.lambda == original.lambda);  // bitwise, not approximate
  CHECK(r.episode_reward == original.episode_reward);
  CHECK(r.mean_latency_ms == original.mean_latency_ms);
  CHECK(r.total_uav_energy == original.total_uav_energy);
  CHECK(r.deadline_met_count == 50);
}

TEST_CASE("random doubles survive persistence bitwise") {
  KnowledgeStore store(scratch_dir("random_doubles"));
  Rng rng(404);
  std::vector<EpisodeRecord> originals;
  for (int i = 0; i < 200; ++i) {
    EpisodeRecord r = make_episode(i);
    r.lambda = rng.uniform(0.25, 8.0);
    r.episode_reward = -rng.uniform(0.0, 1e6) * rng.canonical();
    r.mean_latency_ms = rng.uniform(0.0, 1e-3);
    r.total_uav_energy = rng.gaussian();
    originals.push_back(r);
    store.append(r);
  }
  const auto loaded = store.load_episodes();
  REQUIRE(loaded.size() == originals.size());
  for (std::size_t i = 0; i < originals.size(); ++i) {
    CHECK(loaded[i].lambda == originals[i].lambda);
    CHECK(loaded[i].episode_reward == originals[i].episode_reward);
    CHECK(loaded[i].mean_latency_ms == originals[i].mean_latency_ms);
    CHECK(loaded[i].total_uav_energy == originals[i].total_uav_energy);
  }
}

TEST_CASE("non-finite numerics are rejected on append") {
  KnowledgeStore store(scratch_dir("nonfinite"));
  EpisodeRecord r = make_episode(0);
  r.lambda = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(store.append(r), std::invalid_argument);
  r.lambda = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(store.append(r), std::invalid_argument);
  CHECK(store.load_episodes().empty());
}

TEST_CASE("episode filters compose") {
  KnowledgeStore store(scratch_dir("filters"));
  for (int e = 0; e < 10; ++e) {
    store.append(make_episode(e, "Greedy", 1));
    store.append(make_episode(e, "FixedD3pg", 1));
    store.append(make_episode(e, "Greedy", 2));
  }

  EpisodeFilter by_method;
  by_method.method = "FixedD3pg";
  CHECK(store.load_episodes(by_method).size() == 10);

  EpisodeFilter by_seed;
  by_seed.seed = 2;
  CHECK(store.load_episodes(by_seed).size() == 10);

  EpisodeFilter by_range;
  by_range.episode_range = {3, 5};
  CHECK(store.load_episodes(by_range).size() == 9);

  EpisodeFilter all_three;
  all_three.method = "Greedy";
  all_three.seed = 1;
  all_three.episode_range = {0, 0};
  const auto rows = store.load_episodes(all_three);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].episode == 0);
  CHECK(rows[0].method == "Greedy");

  EpisodeFilter nothing;
  nothing.method = "NoSuchMethod";
  CHECK(store.load_episodes(nothing).empty());
}

TEST_CASE("appends accumulate without rewriting history") {
  const fs::path dir = scratch_dir("append_only");
  KnowledgeStore store(dir);
  store.append(make_episode(0));
  const auto first_size = fs::file_size(dir / "episodes.jsonl");
  std::string first_content;
  {
    std::ifstream in(dir / "episodes.jsonl");
    std::getline(in, first_content);
  }

  store.append(make_episode(1));
  std::string reread;
  {
    std::ifstream in(dir / "episodes.jsonl");
    std::getline(in, reread);
  }
  CHECK(fs::file_size(dir / "episodes.jsonl") > first_size);
  CHECK(reread == first_content);  // the first line is untouched
  CHECK(store.load_episodes().size() == 2);
}

TEST_CASE("a second store on the same directory sees earlier writes") {
  const fs::path dir = scratch_dir("reopen");
  {
    KnowledgeStore store(dir);
    store.append(make_episode(7, "Greedy", 9));
  }
  KnowledgeStore reopened(dir);
  const auto rows = reopened.load_episodes();
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].episode == 7);
  CHECK(rows[0].seed == 9);
}

TEST_CASE("provenance records round-trip") {
  KnowledgeStore store(scratch_dir("provenance"));
  ProvenanceRecord p;
  p.episode = 40;
  p.method = "LlmShapedD3pg";
  p.seed = 3;
  p.kind = "refine";
  p.reason = "two consecutive latency-deviating windows: lambda_base *= 0.8";
  p.lambda_base = 0.8;
  p.lambda = 1.6;
  store.append(p);

  ProvenanceRecord advisor;
  advisor.episode = 60;
  advisor.kind = "advisor";
  advisor.reason = "adopted";
  advisor.lambda_base = 0.8;
  advisor.lambda = 3.2;
  store.append(advisor);

  const auto loaded = store.load_provenance();
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].kind == "refine");
  CHECK(loaded[0].reason == p.reason);
  CHECK(loaded[0].lambda_base == 0.8);
  CHECK(loaded[1].kind == "advisor");
  CHECK(loaded[1].episode == 60);
}

TEST_CASE("trajectories round-trip with their step vectors") {
  KnowledgeStore store(scratch_dir("trajectories"));
  TrajectoryRecord t = make_trajectory(5, -42.5, 3);
  t.steps[1].first[2] = 0.1 + 0.2;
  store.append(t);

  const auto loaded = store.load_trajectories();
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].episode == 5);
  CHECK(loaded[0].episode_reward == -42.5);
  REQUIRE(loaded[0].steps.size() == 3);
  CHECK(loaded[0].steps[1].first[2] == t.steps[1].first[2]);
  CHECK(loaded[0].steps[2].second == t.steps[2].second);
}

TEST_CASE("the trajectory stream keeps at least the newest 200") {
  KnowledgeStore store(scratch_dir("rotation"));
  const int total = 520;
  for (int e = 0; e < total; ++e) store.append(make_trajectory(e, -double(e), 1));

  const auto loaded = store.load_trajectories();
  REQUIRE(loaded.size() == KnowledgeStore::kTrajectoryCap);
  // Newest cap records, in append order.
  CHECK(loaded.front().episode == total - KnowledgeStore::kTrajectoryCap);
  CHECK(loaded.back().episode == total - 1);
}

TEST_CASE("rotation state survives reopening the store") {
  const fs::path dir = scratch_dir("rotation_reopen");
  {
    KnowledgeStore store(dir);
    for (int e = 0; e < 350; ++e) store.append(make_trajectory(e, -double(e), 1));
  }
  KnowledgeStore reopened(dir);
  for (int e = 350; e < 420; ++e) reopened.append(make_trajectory(e, -double(e), 1));
  const auto loaded = reopened.load_trajectories();
  REQUIRE(loaded.size() == KnowledgeStore::kTrajectoryCap);
  CHECK(loaded.back().episode == 419);
  CHECK(loaded.front().episode == 420 - KnowledgeStore::kTrajectoryCap);
}

TEST_CASE("top_trajectories ranks by reward with ties to the earliest") {
  KnowledgeStore store(scratch_dir("top_k"));
  store.append(make_trajectory(0, -10.0, 1));
  store.append(make_trajectory(1, -5.0, 1));
  store.append(make_trajectory(2, -5.0, 1));
  store.append(make_trajectory(3, -20.0, 1));
  store.append(make_trajectory(4, -1.0, 1));

  const auto top3 = store.top_trajectories(3);
  REQUIRE(top3.size() == 3);
  CHECK(top3[0].episode == 4);   // -1 best
  CHECK(top3[1].episode == 1);   // -5 tie: earliest appended first
  CHECK(top3[2].episode == 2);

  CHECK(store.top_trajectories(0).empty());
  CHECK(store.top_trajectories(100).size() == 5);  // k larger than stock
}

TEST_CASE("a malformed line is reported with its line number") {
  const fs::path dir = scratch_dir("malformed");
  KnowledgeStore store(dir);
  store.append(make_episode(0));
  store.append(make_episode(1));
  {
    std::ofstream out(dir / "episodes.jsonl", std::ios::app);
    out << "{not json\n";
  }
  store.append(make_episode(2));  // appends still work past the bad line

  try {
    store.load_episodes();
    FAIL("expected IoError");
  } catch (const IoError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 3") != std::string::npos);
  }
}

TEST_CASE("loading from an empty directory yields empty streams") {
  KnowledgeStore store(scratch_dir("empty"));
  CHECK(store.load_episodes().empty());
  CHECK(store.load_provenance().empty());
  CHECK(store.load_trajectories().empty());
  CHECK(store.top_trajectories(5).empty());
}

TEST_CASE("every persisted line carries the schema version") {
  const fs::path dir = scratch_dir("schema");
  KnowledgeStore store(dir);
  store.append(make_episode(0));
  std::ifstream in(dir / "episodes.jsonl");
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line.find("\"v\":\"1\"") != std::string::npos);
}
