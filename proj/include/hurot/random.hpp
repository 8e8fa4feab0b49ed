#pragma once

#include <cstdint>

#include "hurot/measure.hpp"

namespace hurot {

// Counter-based generator: the k-th draw is a hash of (key, k), so streams are
// reproducible and independent of draw interleaving elsewhere.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class SupportShape {
  kUnitSquare,  // uniform in [0, 1]^2
  kTriangle,    // uniform in {0 <= t1 < t2 <= 1}
};

enum class WeightLaw {
  kUniform,  // uniform in [0, 1]
  kUnit,     // exactly 1
};

DiscreteMeasure random_measure(int n, std::uint64_t seed, SupportShape shape = SupportShape::kUnitSquare,
                               WeightLaw weights = WeightLaw::kUniform);

}  // namespace hurot
