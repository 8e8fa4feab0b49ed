#include <gtest/gtest.h>

#include <cmath>

#include "hurot/error.hpp"
#include "hurot/kernel.hpp"
#include "test_support.hpp"

namespace hurot {
namespace {

using testing::points_2d;

TEST(Kernel, GroundCosts) {
  const auto x = points_2d({{0, 0}}, {1});
  const auto y = points_2d({{3, 4}}, {1});
  EXPECT_DOUBLE_EQ(cost_matrix(CostSpec::sq_euclidean(), x, y)(0, 0), 25.0);
  EXPECT_DOUBLE_EQ(cost_matrix(CostSpec::euclidean(), x, y)(0, 0), 5.0);
  EXPECT_DOUBLE_EQ(cost_matrix(CostSpec::sq_euclidean(), y, y)(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(cost_matrix(CostSpec::euclidean(), y, y)(0, 0), 0.0);
}

TEST(Kernel, DimMismatch) {
  const auto x = points_2d({{0, 0}}, {1});
  const auto y = testing::points_1d({1}, {1});
  EXPECT_THROW(cost_matrix(CostSpec::sq_euclidean(), x, y), Error);
}

TEST(Kernel, ExplicitMatrix) {
  Eigen::MatrixXd m(1, 2);
  m << 1.5, 2.5;
  const auto x = points_2d({{0, 0}}, {1});
  const auto y = points_2d({{1, 0}, {0, 1}}, {1, 1});
  EXPECT_EQ(cost_matrix(CostSpec::explicit_matrix(m), x, y), m);
  EXPECT_THROW(cost_matrix(CostSpec::explicit_matrix(m), y, x), Error);
}

TEST(Kernel, Gibbs) {
  Eigen::MatrixXd c(1, 3);
  c << 0.0, 0.5, 2.0;
  const Eigen::MatrixXd k = gibbs_kernel(c, 0.5);
  EXPECT_DOUBLE_EQ(k(0, 0), 1.0);
  EXPECT_NEAR(k(0, 1), std::exp(-1.0), 1e-16);
  EXPECT_GT(k(0, 1), k(0, 2));
  EXPECT_GT(k(0, 2), 0.0);
}

TEST(Kernel, InnerProductsAndNorms) {
  const auto d = points_2d({{0.2, 0.3}}, {1});
  const auto e = points_2d({{0.7, 0.1}}, {1});
  const double c = 0.25 + 0.04;
  EXPECT_DOUBLE_EQ(kernel_inner(d, d, CostSpec::sq_euclidean(), 0.3), 1.0);
  EXPECT_NEAR(kernel_norm_sq(d, d, CostSpec::sq_euclidean(), 0.3), 0.0, 1e-15);
  EXPECT_NEAR(kernel_norm_sq(d, e, CostSpec::sq_euclidean(), 0.3), 2 - 2 * std::exp(-c / 0.3), 1e-14);
}

TEST(Kernel, QuadraticFormsNonNegative) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto mu = testing::random_cloud(6, 100 + s);
    const auto nu = testing::random_cloud(5, 200 + s);
    for (double eps : {0.05, 1.0, 10.0}) {
      EXPECT_GE(kernel_norm_sq(mu, nu, CostSpec::sq_euclidean(), eps), -1e-10);
      EXPECT_GE(kernel_norm_sq(mu, nu, CostSpec::euclidean(), eps), -1e-10);
    }
  }
}

TEST(Kernel, Mmd) {
  const auto a = testing::random_cloud(4, 5);
  const auto b = testing::random_cloud(6, 6);
  EXPECT_NEAR(mmd(a, a, CostSpec::sq_euclidean()), 0.0, 1e-14);
  EXPECT_NEAR(mmd(a, b, CostSpec::sq_euclidean()), mmd(b, a, CostSpec::sq_euclidean()), 1e-14);
  const auto x = points_2d({{0, 0}}, {1});
  const auto y = points_2d({{1, 2}}, {1});
  EXPECT_NEAR(mmd(x, y, CostSpec::sq_euclidean()), -10.0, 1e-14);

  // Direct double sum over the signed measure.
  const Eigen::MatrixXd pts = [&] {
    Eigen::MatrixXd p(a.size() + b.size(), 2);
    p << a.points(), b.points();
    return p;
  }();
  Eigen::VectorXd w(a.size() + b.size());
  w << a.weights(), -b.weights();
  double direct = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    for (Eigen::Index j = 0; j < w.size(); ++j) direct += w[i] * w[j] * (pts.row(i) - pts.row(j)).squaredNorm();
  }
  EXPECT_NEAR(mmd(a, b, CostSpec::sq_euclidean()), direct, 1e-12);
}

}  // namespace
}  // namespace hurot
