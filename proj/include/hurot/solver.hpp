#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "hurot/divergence.hpp"
#include "hurot/kernel.hpp"
#include "hurot/measure.hpp"
#include "hurot/plan.hpp"

namespace hurot {

enum class Model {
  kStandard,     // entropic term eps KL(pi | alpha x beta)
  kHomogeneous,  // entropic term eps R(pi | alpha, beta)
};

struct Potentials {
  Eigen::VectorXd f;  // over alpha's atoms
  Eigen::VectorXd g;  // over beta's atoms
};

struct SolverConfig {
  double epsilon = 1.0;
  Model model = Model::kHomogeneous;
  // Stop once the sup-norm change of (f, g) over one full update is below tol.
  double tol = 1e-9;
  int max_iter = 10000;
  // Initial potentials; zeros when unset.
  std::optional<Potentials> warm_start;
  // Called after every full (f, g) update with the 1-based iteration index.
  std::function<void(int, const Potentials&)> on_iterate;

  // Throws kInvalidArgument on eps <= 0, tol <= 0 or max_iter < 1.
  void validate() const;
};

struct SolveResult {
  Potentials potentials;
  TransportPlan plan;
  double dual_value = 0.0;
  double primal_value = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

// A value produced by one or more solves, flagged when any of them hit
// max_iter.
struct FlaggedValue {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};

struct SymmetricResult {
  Eigen::VectorXd f;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Generalized Sinkhorn for the entropic term eps KL(pi | alpha x beta). The
// OtbSpatial divergence runs the same iteration on the hat measures.
// Throws kInfeasible for Balanced with unequal masses and kZeroMass when a
// measure has no mass.
SolveResult sinkhorn_standard(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                              const CostSpec& cost, const MarginalDivergence& div,
                              const SolverConfig& cfg);

// Sinkhorn on (alpha / m_g, beta / m_g); the plan is exp((f + g - c) / eps) alpha x beta / m_g.
SolveResult sinkhorn_homogeneous(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                                 const CostSpec& cost, const MarginalDivergence& div,
                                 const SolverConfig& cfg);

// Dispatches on cfg.model.
SolveResult solve(const DiscreteMeasure& alpha, const DiscreteMeasure& beta, const CostSpec& cost,
                  const MarginalDivergence& div, const SolverConfig& cfg);

// Self-dual problem OT(alpha, alpha) solved with the averaged update
// f <- (f + T(f)) / 2. Uses cfg.model for the reference measure.
SymmetricResult sinkhorn_symmetric(const DiscreteMeasure& alpha, const CostSpec& cost,
                                   const MarginalDivergence& div, const SolverConfig& cfg);

// Optimal dual value, with the null-measure conventions applied when a mass
// vanishes.
FlaggedValue transport_cost(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                            const CostSpec& cost, const MarginalDivergence& div,
                            const SolverConfig& cfg);

// OT(a, b) - OT(a, a) / 2 - OT(b, b) / 2, plus the mass bias
// eps / 2 (m(a) - m(b))^2 in the standard model only.
FlaggedValue sinkhorn_divergence(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                                 const CostSpec& cost, const MarginalDivergence& div,
                                 const SolverConfig& cfg);

double dual_objective(const Potentials& potentials, const DiscreteMeasure& alpha,
                      const DiscreteMeasure& beta, const CostSpec& cost,
                      const MarginalDivergence& div, const SolverConfig& cfg);

double primal_objective(const TransportPlan& plan, const DiscreteMeasure& alpha,
                        const DiscreteMeasure& beta, const CostSpec& cost,
                        const MarginalDivergence& div, const SolverConfig& cfg);

}  // namespace hurot
