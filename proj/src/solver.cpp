#include "hurot/solver.hpp"

#include <cmath>

#include "hurot/error.hpp"
#include "sinkhorn_engine.hpp"

namespace hurot {

namespace {

double reference_mass(const DiscreteMeasure& mu, const MarginalDivergence& div) {
  return detail::side_inputs(mu, div).weights.sum();
}

FlaggedValue self_cost(const DiscreteMeasure& mu, double mass, const CostSpec& cost,
                       const MarginalDivergence& div, const SolverConfig& cfg) {
  if (mass == 0.0) return {};
  const SymmetricResult r = sinkhorn_symmetric(mu, cost, div, cfg);
  return {r.value, r.converged, r.iterations};
}

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  if (max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be at least 1");
}

SolveResult sinkhorn_standard(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                              const CostSpec& cost, const MarginalDivergence& div,
                              const SolverConfig& cfg) {
  cfg.validate();
  const detail::Problem p =
      detail::build_problem(alpha, beta, cost, div, Model::kStandard, cfg.epsilon);
  return detail::run_sinkhorn(p, cfg);
}

SolveResult sinkhorn_homogeneous(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                                 const CostSpec& cost, const MarginalDivergence& div,
                                 const SolverConfig& cfg) {
  cfg.validate();
  const detail::Problem p =
      detail::build_problem(alpha, beta, cost, div, Model::kHomogeneous, cfg.epsilon);
  return detail::run_sinkhorn(p, cfg);
}

SolveResult solve(const DiscreteMeasure& alpha, const DiscreteMeasure& beta, const CostSpec& cost,
                  const MarginalDivergence& div, const SolverConfig& cfg) {
  return cfg.model == Model::kStandard ? sinkhorn_standard(alpha, beta, cost, div, cfg)
                                       : sinkhorn_homogeneous(alpha, beta, cost, div, cfg);
}

SymmetricResult sinkhorn_symmetric(const DiscreteMeasure& alpha, const CostSpec& cost,
                                   const MarginalDivergence& div, const SolverConfig& cfg) {
  cfg.validate();
  const detail::Problem p =
      detail::build_symmetric_problem(alpha, cost, div, cfg.model, cfg.epsilon);
  return detail::run_symmetric(p, cfg);
}

FlaggedValue transport_cost(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                            const CostSpec& cost, const MarginalDivergence& div,
                            const SolverConfig& cfg) {
  cfg.validate();
  const double ma = reference_mass(alpha, div);
  const double mb = reference_mass(beta, div);
  if (ma == 0.0 || mb == 0.0) {
    if (ma == 0.0 && mb == 0.0) return {};
    if (div.is_balanced()) throw Error(ErrorCode::kInfeasible, "infeasible: unequal masses");
    const double per_unit = cfg.model == Model::kHomogeneous
                                ? div.phi_at_zero() + 0.5 * cfg.epsilon
                                : div.phi_at_zero();
    return {per_unit * (ma + mb), true, 0};
  }
  const SolveResult r = solve(alpha, beta, cost, div, cfg);
  return {r.dual_value, r.converged, r.iterations};
}

FlaggedValue sinkhorn_divergence(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                                 const CostSpec& cost, const MarginalDivergence& div,
                                 const SolverConfig& cfg) {
  cfg.validate();
  if (cost.is_explicit()) {
    throw Error(ErrorCode::kUnsupportedKind, "the Sinkhorn divergence needs a pointwise ground cost");
  }
  const double ma = reference_mass(alpha, div);
  const double mb = reference_mass(beta, div);
  const FlaggedValue cross = transport_cost(alpha, beta, cost, div, cfg);
  const FlaggedValue self_a = self_cost(alpha, ma, cost, div, cfg);
  const FlaggedValue self_b = self_cost(beta, mb, cost, div, cfg);
  FlaggedValue out;
  out.value = cross.value - 0.5 * self_a.value - 0.5 * self_b.value;
  if (cfg.model == Model::kStandard) out.value += 0.5 * cfg.epsilon * (ma - mb) * (ma - mb);
  out.converged = cross.converged && self_a.converged && self_b.converged;
  out.iterations = cross.iterations + self_a.iterations + self_b.iterations;
  return out;
}

double dual_objective(const Potentials& potentials, const DiscreteMeasure& alpha,
                      const DiscreteMeasure& beta, const CostSpec& cost,
                      const MarginalDivergence& div, const SolverConfig& cfg) {
  cfg.validate();
  if (potentials.f.size() != alpha.size() || potentials.g.size() != beta.size()) {
    throw Error(ErrorCode::kShapeMismatch, "potentials do not match the supports");
  }
  const detail::Problem p = detail::build_problem(alpha, beta, cost, div, cfg.model, cfg.epsilon);
  return detail::dual_value(p, potentials);
}

double primal_objective(const TransportPlan& plan, const DiscreteMeasure& alpha,
                        const DiscreteMeasure& beta, const CostSpec& cost,
                        const MarginalDivergence& div, const SolverConfig& cfg) {
  cfg.validate();
  const detail::Problem p = detail::build_problem(alpha, beta, cost, div, cfg.model, cfg.epsilon);
  return detail::primal_value(p, plan, detail::feasibility_slack(cfg));
}

}  // namespace hurot
