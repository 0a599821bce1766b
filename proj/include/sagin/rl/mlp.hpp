#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "sagin/rng.hpp"

namespace sagin {

// Minimal dense network: rectifier hidden layers, identity or tanh output.
// Weight matrices are (fan_out x fan_in); samples travel as matrix columns
// so batched training stays inside Eigen products.
struct Mlp {
  enum class Output { Identity, Tanh };

  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  Output output = Output::Identity;

  int input_size() const { return static_cast<int>(weights.front().cols()); }
  int output_size() const { return static_cast<int>(weights.back().rows()); }
  int layer_count() const { return static_cast<int>(weights.size()); }
};

// Fresh network with uniform fan-in scaled init, deterministic under rng.
// sizes runs input first, output last, e.g. {22, 64, 64, 1}.
Mlp make_mlp(const std::vector<int>& sizes, Mlp::Output output, Rng& rng);

// Post-activation outputs per layer, kept for the backward pass.
struct MlpTrace {
  Eigen::MatrixXd input;
  std::vector<Eigen::MatrixXd> layer_out;  // back() is the network output
};

// Forward over a batch (columns = samples).  Pass a trace to retain
// activations for backward().
Eigen::MatrixXd mlp_forward(const Mlp& net, const Eigen::MatrixXd& input,
                            MlpTrace* trace = nullptr);
Eigen::VectorXd mlp_forward(const Mlp& net, const Eigen::VectorXd& input);

// Parameter and input gradients from one backward sweep.
struct MlpGrads {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  Eigen::MatrixXd input;

  void add(const MlpGrads& other);
};

// Reverse-mode gradients for upstream = dLoss/dOutput (same shape as the
// batch output).  Pure: does not touch the network.
MlpGrads mlp_backward(const Mlp& net, const MlpTrace& trace, const Eigen::MatrixXd& upstream);

// Plain gradient descent: theta -= rate * grad.
void sgd_step(Mlp& net, const MlpGrads& grads, double rate);

// target = tau * online + (1 - tau) * target, element-wise.
void soft_update(Mlp& target, const Mlp& online, double tau);

// Versioned flat binary snapshot: magic, layer-size header, raw 64-bit
// little-endian doubles in row-major order.  Any header mismatch on load is
// a hard error.
void save_mlp(const Mlp& net, std::ostream& out);
Mlp load_mlp(std::istream& in);
void save_mlp(const Mlp& net, const std::filesystem::path& path);
Mlp load_mlp(const std::filesystem::path& path);

}  // namespace sagin
