#include "hurot/otb.hpp"

#include <limits>

#include "hurot/error.hpp"
#include "hurot/oracle.hpp"

namespace hurot {

namespace {

bool unit_weights(const DiscreteMeasure& mu) {
  return (mu.weights().array() == 1.0).all();
}

}  // namespace

DiscreteMeasure hat_measure(const BoundaryDomain& domain, const DiscreteMeasure& mu) {
  return mu.with_weights(mu.weights().cwiseProduct(boundary_costs(domain, mu)));
}

double total_persistence(const BoundaryDomain& domain, const DiscreteMeasure& mu) {
  return mu.weights().dot(boundary_costs(domain, mu));
}

SolveResult rotb_solve(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                       const BoundaryDomain& domain, const SolverConfig& cfg) {
  return solve(alpha, beta, CostSpec(domain.cost_kind), MarginalDivergence::otb(domain), cfg);
}

FlaggedValue rotb_cost(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                       const BoundaryDomain& domain, const SolverConfig& cfg) {
  return transport_cost(alpha, beta, CostSpec(domain.cost_kind), MarginalDivergence::otb(domain),
                        cfg);
}

FlaggedValue rotb_sinkhorn_divergence(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                                      const BoundaryDomain& domain, const SolverConfig& cfg) {
  return sinkhorn_divergence(alpha, beta, CostSpec(domain.cost_kind),
                             MarginalDivergence::otb(domain), cfg);
}

FgExactResult fg_exact(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                       const BoundaryDomain& domain) {
  const Eigen::VectorXd ca = boundary_costs(domain, alpha);
  const Eigen::VectorXd cb = boundary_costs(domain, beta);
  if (alpha.dim() != beta.dim()) throw Error(ErrorCode::kDimMismatch, "diagrams differ in dimension");
  const Eigen::MatrixXd c = cost_matrix(CostSpec(domain.cost_kind), alpha, beta);
  const Eigen::Index n = alpha.size();
  const Eigen::Index m = beta.size();

  FgExactResult out;
  if (!unit_weights(alpha) || !unit_weights(beta)) {
    out.cost = augmented_transport(c, alpha.weights(), beta.weights(), ca, cb);
    return out;
  }

  // Rows: alpha atoms, then boundary copies for beta. Columns: beta atoms,
  // then boundary copies for alpha.
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + m, m + n);
  aug.topLeftCorner(n, m) = c;
  for (Eigen::Index i = 0; i < n; ++i) aug.row(i).tail(n).setConstant(ca[i]);
  for (Eigen::Index j = 0; j < m; ++j) aug.col(j).tail(m).setConstant(cb[j]);
  const std::vector<int> assignment = solve_assignment(aug);

  PartialMatching matching;
  matching.alpha_to.assign(static_cast<std::size_t>(n), kBoundary);
  matching.beta_from.assign(static_cast<std::size_t>(m), kBoundary);
  double cost = 0.0;
  for (Eigen::Index r = 0; r < n + m; ++r) {
    const int col = assignment[static_cast<std::size_t>(r)];
    cost += aug(r, col);
    if (r < n && col < m) {
      matching.alpha_to[r] = col;
      matching.beta_from[col] = static_cast<int>(r);
    }
  }
  out.cost = cost;
  out.matching = std::move(matching);
  return out;
}

}  // namespace hurot
