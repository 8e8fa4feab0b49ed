#pragma once

#include <Eigen/Dense>

#include "hurot/divergence.hpp"
#include "hurot/kernel.hpp"
#include "hurot/measure.hpp"
#include "hurot/plan.hpp"
#include "hurot/solver.hpp"

namespace hurot::detail {

// One marginal of the dual problem.
struct Side {
  Eigen::VectorXd weights;  // reference measure (alpha, or its hat measure for OTB)
  Eigen::VectorXd log_iterate_weights;  // log of what the soft-min integrates against; -inf on empty atoms
  Eigen::VectorXd boundary;  // c_Delta per atom, OTB only
};

// Discretized dual problem shared by both models. In the homogeneous model the
// soft-min weights are normalized by m_g and the entropic term is
// exp((f + g - c) / eps) / m_g - 1 / m_h against a x b.
struct Problem {
  Eigen::MatrixXd cost;    // n x m
  Eigen::MatrixXd cost_t;  // m x n
  Side a;
  Side b;
  MarginalDivergence div;
  double epsilon = 1.0;
  Model model = Model::kStandard;
  double log_ref_scale = 0.0;  // log m_g, or 0 in the standard model
  double entropic_constant = 0.0;  // m(a) m(b) / m_h, or m(a) m(b) in the standard model
};

// Reference weights per side: hat measures for OtbSpatial, the inputs otherwise.
struct SideInputs {
  Eigen::VectorXd weights;
  Eigen::VectorXd boundary;
};
SideInputs side_inputs(const DiscreteMeasure& mu, const MarginalDivergence& div);

// Pairwise problem. Throws kZeroMass when a reference mass vanishes and
// kInfeasible for Balanced with unequal masses.
Problem build_problem(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                      const CostSpec& cost, const MarginalDivergence& div, Model model,
                      double epsilon);

// Self-dual problem on alpha x alpha.
Problem build_symmetric_problem(const DiscreteMeasure& alpha, const CostSpec& cost,
                                const MarginalDivergence& div, Model model, double epsilon);

// Marginal slack accepted by the primal evaluation for the hard constraints
// of Balanced and OtbSpatial.
double feasibility_slack(const SolverConfig& cfg);

// New potential at atom i from the soft-min s = eps log <exp((g - c(x_i, .)) / eps), nu>.
double potential_update(const MarginalDivergence& div, double epsilon, const Side& self,
                        Eigen::Index i, double softmin);

// -phi*(-f) at atom i, per unit of reference weight.
double dual_marginal_term(const MarginalDivergence& div, const Side& self, Eigen::Index i,
                          double f);

SolveResult run_sinkhorn(const Problem& problem, const SolverConfig& cfg);
SymmetricResult run_symmetric(const Problem& problem, const SolverConfig& cfg);

TransportPlan recover_plan(const Problem& problem, const Potentials& potentials);
double dual_value(const Problem& problem, const Potentials& potentials);
double primal_value(const Problem& problem, const TransportPlan& plan, double slack);

}  // namespace hurot::detail
