#pragma once

#include <cstdint>
#include <random>

namespace vmgame {

// Deterministic uniform generator. The mapping from raw engine output to
// doubles is pinned here (53-bit mantissa trick) instead of relying on
// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vmgame
