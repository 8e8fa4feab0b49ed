#include <gtest/gtest.h>

#include <cmath>

#include "hurot/error.hpp"
#include "hurot/experiments.hpp"
#include "hurot/otb.hpp"
#include "test_support.hpp"

namespace hurot {
namespace {

using testing::diagram;
using testing::points_2d;

const BoundaryDomain kPlane = BoundaryDomain::half_plane();

SolverConfig config(double eps, double tol = 1e-9, int max_iter = 10000) {
  SolverConfig cfg;
  cfg.epsilon = eps;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  return cfg;
}

TEST(Boundary, HalfPlaneCostAndProjection) {
  const Eigen::Vector2d x(0.0, 2.0);
  EXPECT_NEAR(boundary_cost(kPlane, x), 2.0, 1e-15);
  EXPECT_NEAR(boundary_cost(BoundaryDomain::half_plane(GroundCost::kEuclidean), x), std::sqrt(2.0), 1e-15);
  const Eigen::VectorXd p = project(kPlane, x);
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1], 1.0, 1e-15);
  EXPECT_NEAR(ground_cost(GroundCost::kSqEuclidean, x, p), boundary_cost(kPlane, x), 1e-15);
  EXPECT_DOUBLE_EQ(boundary_cost(kPlane, Eigen::Vector2d(0.3, 0.3)), 0.0);
  EXPECT_THROW(boundary_cost(kPlane, Eigen::Vector2d(0.5, 0.2)), Error);
}

TEST(Boundary, ProjectionIsNearestBoundaryPoint) {
  CounterRng rng(2);
  const auto mu = diagram(20, 7);
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const Eigen::VectorXd x = mu.point(i);
    const double c = boundary_cost(kPlane, x);
    for (int k = 0; k < 50; ++k) {
      const double t = -1 + 3 * rng.uniform();
      EXPECT_LE(c, ground_cost(GroundCost::kSqEuclidean, x, Eigen::Vector2d(t, t)) + 1e-15);
    }
  }
}

TEST(Boundary, Box) {
  const auto box = BoundaryDomain::box({{0, 1}, {0, 2}});
  EXPECT_NEAR(boundary_cost(box, Eigen::Vector2d(0.25, 1.0)), 0.0625, 1e-15);
  const Eigen::VectorXd p = project(box, Eigen::Vector2d(0.25, 1.0));
  EXPECT_NEAR(p[0], 0.0, 1e-15);
  EXPECT_NEAR(p[1], 1.0, 1e-15);
  EXPECT_THROW(boundary_cost(box, Eigen::Vector2d(1.5, 1.0)), Error);
  EXPECT_THROW(boundary_cost(box, Eigen::Vector3d(0.5, 0.5, 0.5)), Error);
}

TEST(Otb, HatMeasureAndPersistence) {
  const auto mu = points_2d({{0, 2}, {0.5, 0.5}, {0.1, 0.3}}, {1, 3, 2});
  const auto hat = hat_measure(kPlane, mu);
  EXPECT_EQ(hat.size(), 3);
  EXPECT_NEAR(hat.weights()[0], 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(hat.weights()[1], 0.0);
  EXPECT_NEAR(hat.weights()[2], 2 * 0.02, 1e-15);
  EXPECT_NEAR(total_persistence(kPlane, points_2d({{0, 2}}, {1})), 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(total_persistence(kPlane, DiscreteMeasure(2)), 0.0);
  EXPECT_NEAR(total_persistence(kPlane, scale(mu, 3.0)), 3 * total_persistence(kPlane, mu), 1e-15);
  EXPECT_EQ(hat_measure(kPlane, scale(mu, 4.0)).weights(), (4.0 * hat.weights()).eval());
}

TEST(Otb, NullConventions) {
  const auto beta = points_2d({{0, 2}}, {1});
  EXPECT_NEAR(rotb_cost(DiscreteMeasure(2), beta, kPlane, config(1.0)).value, 3.0, 1e-15);
  const auto b = diagram(6, 3);
  for (double eps : {0.1, 1.0, 2.0}) {
    EXPECT_NEAR(rotb_cost(DiscreteMeasure(2), b, kPlane, config(eps)).value,
                (1 + eps / 2) * total_persistence(kPlane, b), 1e-9);
  }
  EXPECT_DOUBLE_EQ(rotb_cost(DiscreteMeasure(2), DiscreteMeasure(2), kPlane, config(1.0)).value, 0.0);
  EXPECT_THROW(rotb_solve(DiscreteMeasure(2), b, kPlane, config(1.0)), Error);
}

TEST(Otb, OptimalityConditionsAndGap) {
  const auto a = diagram(5, 11);
  const auto b = diagram(7, 12);
  for (Model model : {Model::kHomogeneous, Model::kStandard}) {
    SolverConfig cfg = config(1.0);
    cfg.model = model;
    const SolveResult r = rotb_solve(a, b, kPlane, cfg);
    ASSERT_TRUE(r.converged);
    EXPECT_LT(std::abs(r.duality_gap), 1e-6 * (1 + std::abs(r.dual_value)));
    const Eigen::VectorXd ca = boundary_costs(kPlane, a);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      EXPECT_LE(r.potentials.f[i], ca[i] + 1e-12);
      // The plan never moves more than the available mass.
      EXPECT_LE(r.plan.marginal_1()[i], a.weights()[i] * (1 + 1e-6));
    }
  }
}

TEST(Otb, ExactHomogeneity) {
  const auto a = diagram(5, 21);
  const auto b = diagram(10, 22);
  const SolverConfig cfg = config(1.0);
  const SolveResult base = rotb_solve(a, b, kPlane, cfg);
  const double sk = rotb_sinkhorn_divergence(a, b, kPlane, cfg).value;
  EXPECT_GT(sk, 0.0);
  for (double lambda : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const auto la = scale(a, lambda);
    const auto lb = scale(b, lambda);
    const SolveResult r = rotb_solve(la, lb, kPlane, cfg);
    EXPECT_LT(testing::rel_err(r.dual_value / lambda, base.dual_value), 1e-9);
    EXPECT_LT((r.potentials.f - base.potentials.f).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((r.potentials.g - base.potentials.g).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(plan_proportionality(base.plan, r.plan, lambda), 1e-9);
    EXPECT_LT(std::abs(rotb_sinkhorn_divergence(la, lb, kPlane, cfg).value / lambda - sk), 1e-9 * sk);
  }
}

TEST(Otb, SinkhornDivergenceProperties) {
  const auto a = diagram(4, 31);
  EXPECT_NEAR(rotb_sinkhorn_divergence(a, a, kPlane, config(1.0, 1e-12)).value, 0.0, 1e-10);
  for (std::uint64_t s = 0; s < 10; ++s) {
    EXPECT_GT(rotb_sinkhorn_divergence(diagram(3, 40 + s), diagram(4, 60 + s), kPlane, config(1.0)).value, 0.0);
  }
}

TEST(Otb, MetrizationAlongShrinkingPerturbation) {
  const auto a = diagram(4, 71);
  double previous = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 20; ++n) {
    const double r = std::ldexp(1.0, -n);
    Eigen::MatrixXd pts = a.points();
    // Move each atom along the normal away from the diagonal.
    pts.col(0).array() -= r;
    pts.col(1).array() += r;
    const DiscreteMeasure an(2, pts, a.weights());
    const double sk = rotb_sinkhorn_divergence(an, a, kPlane, config(1.0, 1e-12)).value;
    EXPECT_LT(sk, previous) << "n=" << n;
    previous = sk;
  }
  EXPECT_LT(previous, 1e-6);
}

TEST(Otb, BoundaryInsensitivity) {
  const auto a = diagram(4, 81);
  const auto b = diagram(5, 82);
  const double base = rotb_cost(a, b, kPlane, config(1.0, 1e-12)).value;
  Eigen::MatrixXd pts(a.size() + 1, 2);
  pts << a.points(), 0.4, 0.4 + 1e-7;  // c_Delta = 5e-15
  Eigen::VectorXd w(a.size() + 1);
  w << a.weights(), 1.0;
  const DiscreteMeasure a2(2, pts, w);
  EXPECT_LT(boundary_cost(kPlane, a2.point(a.size())), 1e-12);
  EXPECT_LT(std::abs(rotb_cost(a2, b, kPlane, config(1.0, 1e-12)).value - base), 1e-9);
}

TEST(Otb, RejectsMismatchedCost) {
  const auto a = diagram(3, 1);
  EXPECT_THROW(solve(a, a, CostSpec::euclidean(), MarginalDivergence::otb(kPlane), config(1.0)), Error);
}

TEST(FgExact, MatchesEnumeration) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const int n = 1 + static_cast<int>(s % 3);
    const int m = 1 + static_cast<int>((s / 3) % 3);
    const auto a = diagram(n, 1000 + s);
    const auto b = diagram(m, 2000 + s);
    const Eigen::MatrixXd c = cost_matrix(CostSpec::sq_euclidean(), a, b);
    const double brute = testing::enumerate_partial_matching(c, boundary_costs(kPlane, a), boundary_costs(kPlane, b));
    const FgExactResult r = fg_exact(a, b, kPlane);
    EXPECT_NEAR(r.cost, brute, 1e-12);
    ASSERT_TRUE(r.matching.has_value());
    // The reported matching realizes the cost.
    double realized = 0.0;
    for (int i = 0; i < n; ++i) {
      const int j = r.matching->alpha_to[i];
      realized += j == kBoundary ? boundary_cost(kPlane, a.point(i)) : c(i, j);
    }
    for (int j = 0; j < m; ++j) {
      if (r.matching->beta_from[j] == kBoundary) realized += boundary_cost(kPlane, b.point(j));
    }
    EXPECT_NEAR(realized, r.cost, 1e-12);
  }
}

TEST(FgExact, GeneralWeightsMatchLinearProgram) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto a0 = diagram(3, 3000 + s);
    const auto b0 = diagram(2, 4000 + s);
    const auto a = a0.with_weights(random_measure(3, 5000 + s).weights());
    const auto b = b0.with_weights(random_measure(2, 6000 + s).weights());
    const Eigen::MatrixXd c = cost_matrix(CostSpec::sq_euclidean(), a, b);
    const double lp = testing::lp_transport(c, a.weights(), b.weights(), boundary_costs(kPlane, a),
                                            boundary_costs(kPlane, b));
    const FgExactResult r = fg_exact(a, b, kPlane);
    EXPECT_NEAR(r.cost, lp, 1e-8);
    EXPECT_FALSE(r.matching.has_value());
  }
}

TEST(FgExact, Examples) {
  const auto mu = diagram(4, 91);
  EXPECT_NEAR(fg_exact(mu, DiscreteMeasure(2), kPlane).cost, total_persistence(kPlane, mu), 1e-12);
  EXPECT_NEAR(fg_exact(mu, mu, kPlane).cost, 0.0, 1e-15);
  const auto da = points_2d({{0.0, 1.0}}, {1});
  const auto db = points_2d({{0.2, 0.9}}, {1});
  const double cab = 0.04 + 0.01;
  EXPECT_NEAR(fg_exact(da, db, kPlane).cost, std::min(cab, 0.5 + 0.245), 1e-15);
  const auto far = points_2d({{0.0, 0.1}}, {1});
  const auto far2 = points_2d({{0.9, 1.0}}, {1});
  EXPECT_NEAR(fg_exact(far, far2, kPlane).cost, 0.005 + 0.005, 1e-15);
}

TEST(FgExact, RegularizedApproachesExact) {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto a = diagram(1 + static_cast<int>(s % 4), 7000 + s);
    const auto b = diagram(4 - static_cast<int>(s % 3), 8000 + s);
    const double exact = fg_exact(a, b, kPlane).cost;
    const FlaggedValue v = rotb_cost(a, b, kPlane, config(1e-3, 1e-9, 100000));
    EXPECT_LT(std::abs(v.value - exact), 5e-2 * (1 + exact));
  }
}

}  // namespace
}  // namespace hurot
