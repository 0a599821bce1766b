#include "sagin/rl/mlp.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "sagin/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format stores little-endian doubles");

namespace sagin {
namespace {

constexpr char kMagic[8] = {'S', 'A', 'G', 'I', 'N', 'M', 'L', 'P'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t value = 0;
  in.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!in) throw IoError("mlp snapshot: truncated header");
  return value;
}

}  // namespace

Mlp make_mlp(const std::vector<int>& sizes, Mlp::Output output, Rng& rng) {
  if (sizes.size() < 2) throw std::invalid_argument("make_mlp: need at least input and output");
  Mlp net;
  net.output = output;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int fan_in = sizes[l];
    const int fan_out = sizes[l + 1];
    if (fan_in <= 0 || fan_out <= 0) throw std::invalid_argument("make_mlp: sizes must be positive");
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-bound, bound);
    Eigen::VectorXd b(fan_out);
    for (int r = 0; r < fan_out; ++r) b[r] = rng.uniform(-bound, bound);
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  return net;
}

Eigen::MatrixXd mlp_forward(const Mlp& net, const Eigen::MatrixXd& input, MlpTrace* trace) {
  if (input.rows() != net.input_size())
    throw std::invalid_argument("mlp_forward: input has " + std::to_string(input.rows()) +
                                " rows, network expects " + std::to_string(net.input_size()));
  if (trace) {
    trace->input = input;
    trace->layer_out.clear();
    trace->layer_out.reserve(net.layer_count());
  }

  Eigen::MatrixXd h = input;
  for (int l = 0; l < net.layer_count(); ++l) {
    Eigen::MatrixXd z = (net.weights[l] * h).colwise() + net.biases[l];
    if (l + 1 < net.layer_count())
      h = z.cwiseMax(0.0);
    else
      h = net.output == Mlp::Output::Tanh ? z.array().tanh().matrix() : std::move(z);
    if (trace) trace->layer_out.push_back(h);
  }
  return h;
}

Eigen::VectorXd mlp_forward(const Mlp& net, const Eigen::VectorXd& input) {
  return mlp_forward(net, Eigen::MatrixXd(input), nullptr).col(0);
}

void MlpGrads::add(const MlpGrads& other) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    weights[l] += other.weights[l];
    biases[l] += other.biases[l];
  }
}

MlpGrads mlp_backward(const Mlp& net, const MlpTrace& trace, const Eigen::MatrixXd& upstream) {
  const int layers = net.layer_count();
  if (static_cast<int>(trace.layer_out.size()) != layers)
    throw std::invalid_argument("mlp_backward: trace does not match network depth");

  MlpGrads grads;
  grads.weights.resize(layers);
  grads.biases.resize(layers);

  // Output activation first, then walk the layers in reverse.
  Eigen::MatrixXd delta;
  const Eigen::MatrixXd& y = trace.layer_out.back();
  if (net.output == Mlp::Output::Tanh)
    delta = (upstream.array() * (1.0 - y.array().square())).matrix();
  else
    delta = upstream;

  for (int l = layers - 1; l >= 0; --l) {
    const Eigen::MatrixXd& below = l == 0 ? trace.input : trace.layer_out[l - 1];
    grads.weights[l].noalias() = delta * below.transpose();
    grads.biases[l] = delta.rowwise().sum();
    Eigen::MatrixXd next = net.weights[l].transpose() * delta;
    if (l > 0) {
      // Rectifier derivative from the stored post-activation.
      next = (next.array() * (trace.layer_out[l - 1].array() > 0.0).cast<double>()).matrix();
    }
    delta = std::move(next);
  }
  grads.input = std::move(delta);
  return grads;
}

void sgd_step(Mlp& net, const MlpGrads& grads, double rate) {
  for (int l = 0; l < net.layer_count(); ++l) {
    net.weights[l] -= rate * grads.weights[l];
    net.biases[l] -= rate * grads.biases[l];
  }
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
  for (int l = 0; l < target.layer_count(); ++l) {
    target.weights[l] = tau * online.weights[l] + (1.0 - tau) * target.weights[l];
    target.biases[l] = tau * online.biases[l] + (1.0 - tau) * target.biases[l];
  }
}

void save_mlp(const Mlp& net, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  write_u32(out, kVersion);
  write_u32(out, net.output == Mlp::Output::Tanh ? 1 : 0);
  write_u32(out, static_cast<std::uint32_t>(net.layer_count()));
  write_u32(out, static_cast<std::uint32_t>(net.input_size()));
  for (const Eigen::MatrixXd& w : net.weights)
    write_u32(out, static_cast<std::uint32_t>(w.rows()));
  for (int l = 0; l < net.layer_count(); ++l) {
    const Eigen::MatrixXd& w = net.weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        const double value = w(r, c);
        out.write(reinterpret_cast<const char*>(&value), sizeof value);
      }
    out.write(reinterpret_cast<const char*>(net.biases[l].data()),
              static_cast<std::streamsize>(net.biases[l].size() * sizeof(double)));
  }
  if (!out) throw IoError("mlp snapshot: write failed");
}

Mlp load_mlp(std::istream& in) {
  char magic[8] = {};
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw IoError("mlp snapshot: bad magic bytes");
  if (read_u32(in) != kVersion) throw IoError("mlp snapshot: unsupported version");
  const std::uint32_t output_code = read_u32(in);
  if (output_code > 1) throw IoError("mlp snapshot: unknown output activation");
  const std::uint32_t layers = read_u32(in);
  if (layers == 0 || layers > 64) throw IoError("mlp snapshot: implausible layer count");

  std::vector<int> sizes{static_cast<int>(read_u32(in))};
  for (std::uint32_t l = 0; l < layers; ++l) sizes.push_back(static_cast<int>(read_u32(in)));

  Mlp net;
  net.output = output_code == 1 ? Mlp::Output::Tanh : Mlp::Output::Identity;
  for (std::uint32_t l = 0; l < layers; ++l) {
    if (sizes[l] <= 0 || sizes[l + 1] <= 0) throw IoError("mlp snapshot: bad layer size");
    Eigen::MatrixXd w(sizes[l + 1], sizes[l]);
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        double value = 0.0;
        in.read(reinterpret_cast<char*>(&value), sizeof value);
        w(r, c) = value;
      }
    Eigen::VectorXd b(sizes[l + 1]);
    in.read(reinterpret_cast<char*>(b.data()),
            static_cast<std::streamsize>(b.size() * sizeof(double)));
    if (!in) throw IoError("mlp snapshot: truncated parameter block");
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  return net;
}

void save_mlp(const Mlp& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("mlp snapshot: cannot open " + path.string());
  save_mlp(net, out);
}

Mlp load_mlp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("mlp snapshot: cannot open " + path.string());
  return load_mlp(in);
}

}  // namespace sagin
