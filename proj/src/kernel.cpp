#include "hurot/kernel.hpp"

#include <cmath>

#include "hurot/error.hpp"

namespace hurot {

CostSpec CostSpec::explicit_matrix(Eigen::MatrixXd values) {
  if (!values.allFinite() || (values.size() > 0 && values.minCoeff() < 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "explicit cost matrix must be finite and non-negative");
  }
  CostSpec spec;
  spec.kind_ = std::move(values);
  return spec;
}

double ground_cost(GroundCost kind, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  const double sq = (x - y).squaredNorm();
  return kind == GroundCost::kSqEuclidean ? sq : std::sqrt(sq);
}

double CostSpec::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                            const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (is_explicit()) {
    throw Error(ErrorCode::kUnsupportedKind, "explicit cost matrices have no pointwise form");
  }
  return ground_cost(ground(), x, y);
}

Eigen::MatrixXd cost_matrix(const CostSpec& spec, const DiscreteMeasure& alpha,
                            const DiscreteMeasure& beta) {
  if (spec.is_explicit()) {
    const Eigen::MatrixXd& m = spec.matrix();
    if (m.rows() != alpha.size() || m.cols() != beta.size()) {
      throw Error(ErrorCode::kShapeMismatch, "explicit cost matrix does not match the supports");
    }
    return m;
  }
  if (alpha.dim() != beta.dim()) {
    throw Error(ErrorCode::kDimMismatch, "measures live in different dimensions");
  }
  Eigen::MatrixXd c(alpha.size(), beta.size());
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      c(i, j) = ground_cost(spec.ground(), alpha.points().row(i).transpose(),
                            beta.points().row(j).transpose());
    }
  }
  return c;
}

Eigen::MatrixXd gibbs_kernel(const Eigen::MatrixXd& cost, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  return (-cost.array() / epsilon).exp().matrix();
}

double kernel_inner(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& spec,
                    double epsilon) {
  const Eigen::MatrixXd k = gibbs_kernel(cost_matrix(spec, mu, nu), epsilon);
  return mu.weights().dot(k * nu.weights());
}

double kernel_norm_sq(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& spec,
                      double epsilon) {
  return kernel_inner(mu, mu, spec, epsilon) - 2.0 * kernel_inner(mu, nu, spec, epsilon) +
         kernel_inner(nu, nu, spec, epsilon);
}

double mmd(const DiscreteMeasure& alpha, const DiscreteMeasure& beta, const CostSpec& spec) {
  auto bilinear = [&](const DiscreteMeasure& a, const DiscreteMeasure& b) {
    return a.weights().dot(cost_matrix(spec, a, b) * b.weights());
  };
  return bilinear(alpha, alpha) - 2.0 * bilinear(alpha, beta) + bilinear(beta, beta);
}

}  // namespace hurot
