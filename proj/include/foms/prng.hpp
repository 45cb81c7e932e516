#pragma once

#include "foms/types.hpp"

#include <cstdint>

namespace foms {

/// Deterministic 64-bit generator (splitmix64). Normal variates come from
/// Box-Muller applied to consecutive uniforms, so the stream is reproducible
/// bit-for-bit across platforms for a given seed.
class Prng {
 public:
  static constexpr const char* kName = "splitmix64+boxmuller";

  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller on a consecutive pair of uniforms.
  double normal();

  Vec normal_vector(Index n);
  Mat normal_matrix(Index rows, Index cols);

  /// Uniform point in the product box [a, b]^n.
  Vec uniform_vector(Index n, double a = 0.0, double b = 1.0);

  /// Uniform sample from the unit simplex (normalized exponentials).
  Vec simplex_point(Index n);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace foms
