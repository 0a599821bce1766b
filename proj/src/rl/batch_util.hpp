#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sagin/rl/replay.hpp"

namespace sagin::detail {

// Gathers sampled transitions into column-per-sample matrices.
template <typename ActionT>
struct Batch {
  Eigen::MatrixXd obs;
  Eigen::MatrixXd next_obs;
  Eigen::VectorXd reward;
  Eigen::VectorXd not_done;
  std::vector<ActionT> actions;
};

template <typename ActionT>
Batch<ActionT> gather(const ReplayBuffer<ActionT>& buffer,
                      const std::vector<std::size_t>& indices) {
  const int n = static_cast<int>(indices.size());
  const int obs_dim = static_cast<int>(buffer[indices[0]].obs.size());
  Batch<ActionT> batch;
  batch.obs.resize(obs_dim, n);
  batch.next_obs.resize(obs_dim, n);
  batch.reward.resize(n);
  batch.not_done.resize(n);
  batch.actions.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Transition<ActionT>& t = buffer[indices[i]];
    batch.obs.col(i) = t.obs;
    batch.next_obs.col(i) = t.next_obs;
    batch.reward[i] = t.reward;
    batch.not_done[i] = t.done ? 0.0 : 1.0;
    batch.actions.push_back(t.action);
  }
  return batch;
}

}  // namespace sagin::detail
