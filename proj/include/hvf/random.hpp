#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace hvf {

/// Seeded generator with platform-independent uniform draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for a shard of a data-parallel loop.
  static Rng for_shard(std::uint64_t seed, std::uint64_t shard) {
    return Rng(seed ^ (0x9E3779B97F4A7C15ULL * (shard + 1)));
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform point in the open Euclidean unit ball (rejection from the cube).
  void unit_ball(std::span<double> out) {
    while (true) {
      double s = 0;
      for (auto& v : out) {
        v = uniform(-1.0, 1.0);
        s += v * v;
      }
      if (s < 1.0) return;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hvf
