#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "sagin/rng.hpp"

namespace sagin {

// One stored interaction.  ActionT is an index for DQN and a vector for the
// continuous methods.
template <typename ActionT>
struct Transition {
  Eigen::VectorXd obs;
  ActionT action;
  double reward = 0.0;
  Eigen::VectorXd next_obs;
  bool done = false;
};

// Fixed-capacity ring with uniform seeded sampling (with replacement).
template <typename ActionT>
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

  void push(Transition<ActionT> t) {
    if (entries_.size() < capacity_) {
      entries_.push_back(std::move(t));
    } else {
      entries_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition<ActionT>& operator[](std::size_t i) const { return entries_[i]; }

  std::vector<std::size_t> sample_indices(std::size_t batch, Rng& rng) const {
    std::vector<std::size_t> indices(batch);
    for (std::size_t i = 0; i < batch; ++i)
      indices[i] = static_cast<std::size_t>(rng.uniform_index(entries_.size()));
    return indices;
  }

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition<ActionT>> entries_;
};

}  // namespace sagin
