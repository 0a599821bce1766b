#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sagin {

// Deterministic random source.  Wraps std::mt19937_64 but converts to doubles
// by hand: the std distribution objects are implementation-defined, so using
// them would break bit-for-bit reproducibility across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform double in [0, 1) with 53 bits of precision.
  double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

  // Uniform integer in [0, n).  Rejection-free modulo bias is irrelevant here
  // (n is tiny relative to 2^64), but keep it exact anyway via rejection.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Box-Muller.  No cached spare: one draw consumes two
  // uniforms, which keeps the stream position a pure function of call count.
  double gaussian() {
    double u1;
    do {
      u1 = canonical();
    } while (u1 <= 0.0);
    const double u2 = canonical();
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer.  Used to derive well-separated child seeds from a
// (seed, stream index) pair without correlating the resulting engines.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace sagin
