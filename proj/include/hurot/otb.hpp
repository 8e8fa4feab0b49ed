#pragma once

#include <optional>
#include <vector>

#include "hurot/boundary.hpp"
#include "hurot/measure.hpp"
#include "hurot/solver.hpp"

namespace hurot {

// d mu_hat = c_Delta(x) d mu. Boundary atoms keep their slot with weight 0.
DiscreteMeasure hat_measure(const BoundaryDomain& domain, const DiscreteMeasure& mu);

// Pers(mu) = integral of c_Delta against mu = m(hat(mu)).
double total_persistence(const BoundaryDomain& domain, const DiscreteMeasure& mu);

// Regularized transport with boundary FG_eps. cfg.model selects the
// homogeneous model (default) or the standard KL(pi | hat_alpha x hat_beta) one.
// The ground cost is domain.cost_kind.
SolveResult rotb_solve(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                       const BoundaryDomain& domain, const SolverConfig& cfg);

// FG_eps value, including FG_eps(0, beta) = (1 + eps / 2) Pers(beta).
FlaggedValue rotb_cost(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                       const BoundaryDomain& domain, const SolverConfig& cfg);

// FG_eps(a, b) - FG_eps(a, a) / 2 - FG_eps(b, b) / 2.
FlaggedValue rotb_sinkhorn_divergence(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                                      const BoundaryDomain& domain, const SolverConfig& cfg);

inline constexpr int kBoundary = -1;

// Optimal partial matching for unit-weight diagrams. alpha_to[i] is the beta
// atom matched with alpha atom i or kBoundary; beta_from mirrors it.
struct PartialMatching {
  std::vector<int> alpha_to;
  std::vector<int> beta_from;
};

struct FgExactResult {
  double cost = 0.0;
  std::optional<PartialMatching> matching;  // set for unit weights only
};

// Unregularized transport with boundary. Unit weights go through an
// assignment on the augmented (n + m) x (n + m) matrix; general weights
// through min-cost flow with a boundary reservoir.
FgExactResult fg_exact(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                       const BoundaryDomain& domain);

}  // namespace hurot
