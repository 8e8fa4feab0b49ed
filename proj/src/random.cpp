#include "hurot/random.hpp"

#include <cmath>
#include <utility>

#include "hurot/error.hpp"

namespace hurot {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  return splitmix64(splitmix64(key_) ^ counter_++);
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

DiscreteMeasure random_measure(int n, std::uint64_t seed, SupportShape shape, WeightLaw weights) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "atom count must be non-negative");
  CounterRng rng(seed);
  Eigen::MatrixXd points(n, 2);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    double x = rng.uniform();
    double y = rng.uniform();
    if (shape == SupportShape::kTriangle) {
      if (x > y) std::swap(x, y);
      if (x == y) y = std::nextafter(x, 2.0);
    }
    points(i, 0) = x;
    points(i, 1) = y;
    w[i] = weights == WeightLaw::kUnit ? 1.0 : rng.uniform();
  }
  return DiscreteMeasure(std::move(points), std::move(w));
}

}  // namespace hurot
