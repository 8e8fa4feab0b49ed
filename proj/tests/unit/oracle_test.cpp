#include <gtest/gtest.h>

#include "hurot/error.hpp"
#include "hurot/oracle.hpp"
#include "test_support.hpp"

namespace hurot {
namespace {

using testing::points_1d;
const CostSpec kSq = CostSpec::sq_euclidean();

TEST(Oracle, BalancedExamples) {
  const auto a = testing::random_cloud(5, 1);
  EXPECT_NEAR(exact_balanced_ot(a, a, kSq), 0.0, 1e-12);
  EXPECT_NEAR(exact_balanced_ot(points_1d({0}, {1}), points_1d({1}, {1}), kSq), 1.0, 1e-12);
  EXPECT_NEAR(exact_balanced_ot(points_1d({0, 2}, {0.5, 0.5}), points_1d({1, 3}, {0.5, 0.5}), kSq), 1.0, 1e-12);
  EXPECT_NEAR(exact_balanced_ot(points_1d({0, 2}, {1, 1}), points_1d({1, 3}, {1, 1}), kSq), 2.0, 1e-12);
  EXPECT_THROW(exact_balanced_ot(points_1d({0}, {1}), points_1d({1}, {2}), kSq), Error);
}

TEST(Oracle, BalancedMatchesPermutations) {
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t s = 0; s < 4; ++s) {
      const auto a = testing::uniform_cloud(n, 100 * n + s);
      const auto b = testing::uniform_cloud(n, 100 * n + s + 50);
      const double brute = testing::enumerate_assignment(cost_matrix(kSq, a, b)) / n;
      EXPECT_NEAR(exact_balanced_ot(a, b, kSq), brute, 1e-9);
    }
  }
}

TEST(Oracle, BalancedMatchesLinearProgram) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto a = testing::random_cloud(4, 200 + s);
    auto b = testing::random_cloud(3, 300 + s);
    a = a.with_weights(a.weights() / a.weights().sum());
    b = b.with_weights(b.weights() / b.weights().sum());
    const double lp = testing::lp_transport(cost_matrix(kSq, a, b), a.weights(), b.weights());
    EXPECT_NEAR(exact_balanced_ot(a, b, kSq), lp, 1e-8);
  }
}

TEST(Oracle, PartialTvExamples) {
  const auto a = testing::random_cloud(4, 2);
  EXPECT_NEAR(exact_partial_ot_tv(a, a, kSq), 0.0, 1e-12);
  const auto x = points_1d({0}, {1});
  EXPECT_NEAR(exact_partial_ot_tv(x, points_1d({std::sqrt(5.0)}, {1}), kSq), 2.0, 1e-9);
  EXPECT_NEAR(exact_partial_ot_tv(x, points_1d({std::sqrt(0.5)}, {1}), kSq), 0.5, 1e-9);
}

TEST(Oracle, PartialTvMatchesEnumerationAndLp) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int n = 1 + static_cast<int>(s % 3);
    const int m = 1 + static_cast<int>((s / 3) % 3);
    // Spread points so that both matching and destruction occur.
    auto a = random_measure(n, 400 + s, SupportShape::kUnitSquare, WeightLaw::kUnit);
    auto b = random_measure(m, 500 + s, SupportShape::kUnitSquare, WeightLaw::kUnit);
    a = DiscreteMeasure(2, 1.6 * a.points(), a.weights());
    b = DiscreteMeasure(2, 1.6 * b.points(), b.weights());
    const Eigen::MatrixXd c = cost_matrix(kSq, a, b);
    const double brute = testing::enumerate_partial_matching(c, Eigen::VectorXd::Ones(n), Eigen::VectorXd::Ones(m));
    EXPECT_NEAR(exact_partial_ot_tv(a, b, kSq), brute, 1e-9);

    const auto ga = testing::random_cloud(n, 600 + s);
    const auto gb = testing::random_cloud(m, 700 + s);
    const Eigen::MatrixXd gc = cost_matrix(kSq, ga, gb);
    const double lp = testing::lp_transport(gc, ga.weights(), gb.weights(), Eigen::VectorXd::Ones(n),
                                            Eigen::VectorXd::Ones(m));
    EXPECT_NEAR(exact_partial_ot_tv(ga, gb, kSq), lp, 1e-8);
  }
}

TEST(Oracle, AssignmentMatchesPermutations) {
  CounterRng rng(8);
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::MatrixXd c(n, n);
      for (Eigen::Index k = 0; k < c.size(); ++k) c.data()[k] = rng.uniform();
      const std::vector<int> perm = solve_assignment(c);
      double total = 0.0;
      std::vector<char> seen(n, 0);
      for (int i = 0; i < n; ++i) {
        ASSERT_GE(perm[i], 0);
        EXPECT_FALSE(seen[perm[i]]);
        seen[perm[i]] = 1;
        total += c(i, perm[i]);
      }
      EXPECT_NEAR(total, testing::enumerate_assignment(c), 1e-12);
    }
  }
}

TEST(Oracle, SizeLimit) {
  const auto big = testing::uniform_cloud(65, 1);
  EXPECT_THROW(exact_partial_ot_tv(big, big, kSq), Error);
}

}  // namespace
}  // namespace hurot
