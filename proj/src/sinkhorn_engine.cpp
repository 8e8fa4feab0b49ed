#include "sinkhorn_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hurot/error.hpp"

namespace hurot::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTvDomainSlack = 1e-9;

// eps * log sum_j exp((pot_j - cost_j) / eps + logw_j), computed against the
// running maximum of the exponents.
double softmin(const Eigen::Ref<const Eigen::VectorXd>& pot,
               const Eigen::Ref<const Eigen::VectorXd>& cost_col,
               const Eigen::VectorXd& log_weights, double epsilon) {
  double top = -kInf;
  const Eigen::Index m = pot.size();
  for (Eigen::Index j = 0; j < m; ++j) {
    if (log_weights[j] == -kInf) continue;
    top = std::max(top, (pot[j] - cost_col[j]) / epsilon + log_weights[j]);
  }
  if (top == -kInf) return -kInf;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (log_weights[j] == -kInf) continue;
    acc += std::exp((pot[j] - cost_col[j]) / epsilon + log_weights[j] - top);
  }
  return epsilon * (top + std::log(acc));
}

void half_step(const Problem& p, const Side& self, const Side& other, const Eigen::MatrixXd& cost_t,
               const Eigen::VectorXd& other_pot, Eigen::VectorXd& out) {
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double s = softmin(other_pot, cost_t.col(i), other.log_iterate_weights, p.epsilon);
    out[i] = potential_update(p.div, p.epsilon, self, i, s);
  }
}

double sup_change(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

double feasibility_slack(const SolverConfig& cfg) {
  return std::max(1e-6, 1e3 * cfg.tol / cfg.epsilon);
}

double potential_update(const MarginalDivergence& div, double epsilon, const Side& self,
                        Eigen::Index i, double s) {
  if (div.is_otb()) {
    const double c = self.boundary[i];
    if (c == 0.0) return 0.0;
    return std::min(c, -epsilon * std::log(c) - s);
  }
  return -aprox(div, epsilon, s);
}

double dual_marginal_term(const MarginalDivergence& div, const Side& self, Eigen::Index i, double f) {
  if (std::holds_alternative<Balanced>(div.kind())) return f;
  if (const auto* kl = std::get_if<KullbackLeibler>(&div.kind())) {
    return -kl->rho * std::expm1(-f / kl->rho);
  }
  if (std::holds_alternative<TotalVariation>(div.kind())) {
    // phi*(-f) is +inf once -f > 1; the clamp keeps iterates at f >= -1.
    if (f < -1.0 - kTvDomainSlack) return -kInf;
    return std::min(1.0, std::max(-1.0, f));
  }
  const double c = self.boundary[i];
  if (c == 0.0) return 0.0;
  return std::min(1.0, f / c);
}

SolveResult run_sinkhorn(const Problem& p, const SolverConfig& cfg) {
  const Eigen::Index n = p.cost.rows();
  const Eigen::Index m = p.cost.cols();
  Potentials pot{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(m)};
  if (cfg.warm_start) {
    if (cfg.warm_start->f.size() != n || cfg.warm_start->g.size() != m) {
      throw Error(ErrorCode::kShapeMismatch, "warm start does not match the supports");
    }
    pot = *cfg.warm_start;
  }

  SolveResult result;
  Eigen::VectorXd f_next(n);
  Eigen::VectorXd g_next(m);
  int t = 0;
  bool converged = false;
  while (t < cfg.max_iter) {
    ++t;
    half_step(p, p.a, p.b, p.cost_t, pot.g, f_next);
    half_step(p, p.b, p.a, p.cost, f_next, g_next);
    const double delta = std::max(sup_change(f_next, pot.f), sup_change(g_next, pot.g));
    pot.f.swap(f_next);
    pot.g.swap(g_next);
    if (cfg.on_iterate) cfg.on_iterate(t, pot);
    if (delta < cfg.tol) {
      converged = true;
      break;
    }
  }

  if (p.div.is_balanced() && n > 0) {
    const double shift = pot.f.mean();
    pot.f.array() -= shift;
    pot.g.array() += shift;
  }

  result.plan = recover_plan(p, pot);
  result.dual_value = dual_value(p, pot);
  result.primal_value = primal_value(p, result.plan, feasibility_slack(cfg));
  result.duality_gap = result.primal_value - result.dual_value;
  result.potentials = std::move(pot);
  result.iterations = t;
  result.converged = converged;
  return result;
}

SymmetricResult run_symmetric(const Problem& p, const SolverConfig& cfg) {
  const Eigen::Index n = p.cost.rows();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  if (cfg.warm_start) {
    if (cfg.warm_start->f.size() != n) {
      throw Error(ErrorCode::kShapeMismatch, "warm start does not match the support");
    }
    f = cfg.warm_start->f;
  }
  Eigen::VectorXd tf(n);
  SymmetricResult result;
  int t = 0;
  while (t < cfg.max_iter) {
    ++t;
    half_step(p, p.a, p.a, p.cost_t, f, tf);
    const Eigen::VectorXd next = 0.5 * (f + tf);
    const double delta = sup_change(next, f);
    f = next;
    if (cfg.on_iterate) cfg.on_iterate(t, Potentials{f, f});
    if (delta < cfg.tol) {
      result.converged = true;
      break;
    }
  }
  result.iterations = t;
  result.value = dual_value(p, Potentials{f, f});
  result.f = std::move(f);
  return result;
}

TransportPlan recover_plan(const Problem& p, const Potentials& pot) {
  const Eigen::Index n = p.cost.rows();
  const Eigen::Index m = p.cost.cols();
  Eigen::MatrixXd plan = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (p.b.weights[j] == 0.0) continue;
    const double log_b = std::log(p.b.weights[j]);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (p.a.weights[i] == 0.0) continue;
      plan(i, j) = std::exp((pot.f[i] + pot.g[j] - p.cost(i, j)) / p.epsilon +
                            std::log(p.a.weights[i]) + log_b - p.log_ref_scale);
    }
  }
  return TransportPlan(std::move(plan));
}

double dual_value(const Problem& p, const Potentials& pot) {
  double marginal = 0.0;
  for (Eigen::Index i = 0; i < pot.f.size(); ++i) {
    if (p.a.weights[i] == 0.0) continue;
    marginal += p.a.weights[i] * dual_marginal_term(p.div, p.a, i, pot.f[i]);
  }
  for (Eigen::Index j = 0; j < pot.g.size(); ++j) {
    if (p.b.weights[j] == 0.0) continue;
    marginal += p.b.weights[j] * dual_marginal_term(p.div, p.b, j, pot.g[j]);
  }
  const double plan_mass = recover_plan(p, pot).mass();
  return marginal - p.epsilon * (plan_mass - p.entropic_constant);
}

double primal_value(const Problem& p, const TransportPlan& plan, double slack) {
  if (plan.rows() != p.cost.rows() || plan.cols() != p.cost.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "plan does not match the supports");
  }
  const double transport = plan.weights().cwiseProduct(p.cost).sum();
  const double d1 = eval_divergence(p.div, plan.marginal_1(), p.a.weights, p.a.boundary, slack);
  const double d2 = eval_divergence(p.div, plan.marginal_2(), p.b.weights, p.b.boundary, slack);
  double reg = 0.0;
  if (p.model == Model::kStandard) {
    reg = eval_kl(plan, p.a.weights * p.b.weights.transpose());
  } else {
    reg = eval_R(plan, p.a.weights, p.b.weights);
  }
  return transport + d1 + d2 + p.epsilon * reg;
}

}  // namespace hurot::detail

namespace hurot::detail {

namespace {

constexpr double kMassMatchTol = 1e-9;

Eigen::VectorXd safe_log(const Eigen::VectorXd& w) {
  Eigen::VectorXd out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    out[i] = w[i] > 0.0 ? std::log(w[i]) : -std::numeric_limits<double>::infinity();
  }
  return out;
}

void check_cost_for(const CostSpec& cost, const MarginalDivergence& div) {
  if (!div.is_otb()) return;
  if (cost.is_explicit() || cost.ground() != div.domain().cost_kind) {
    throw Error(ErrorCode::kInvalidArgument,
                "the boundary divergence needs the ground cost of its domain");
  }
}

}  // namespace

SideInputs side_inputs(const DiscreteMeasure& mu, const MarginalDivergence& div) {
  SideInputs in;
  if (div.is_otb()) {
    in.boundary = boundary_costs(div.domain(), mu);
    in.weights = mu.weights().cwiseProduct(in.boundary);
  } else {
    in.weights = mu.weights();
  }
  return in;
}

Problem build_problem(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                      const CostSpec& cost, const MarginalDivergence& div, Model model,
                      double epsilon) {
  check_cost_for(cost, div);
  SideInputs ia = side_inputs(alpha, div);
  SideInputs ib = side_inputs(beta, div);
  const double ma = ia.weights.sum();
  const double mb = ib.weights.sum();
  if (!(ma > 0.0) || !(mb > 0.0)) {
    throw Error(ErrorCode::kZeroMass, "the solver needs two measures with positive mass");
  }
  Eigen::VectorXd b_iter = ib.weights;
  if (div.is_balanced()) {
    if (std::abs(ma - mb) > kMassMatchTol * std::max(ma, mb)) {
      throw Error(ErrorCode::kInfeasible, "infeasible: unequal masses");
    }
    b_iter *= ma / mb;
  }

  Problem p;
  p.cost = cost_matrix(cost, alpha, beta);
  p.cost_t = p.cost.transpose();
  p.div = div;
  p.epsilon = epsilon;
  p.model = model;
  if (model == Model::kHomogeneous) {
    const MassStats s = mass_stats(ma, mb);
    p.log_ref_scale = std::log(s.mass_g);
    p.entropic_constant = s.mass_a;
    p.a.log_iterate_weights = safe_log(ia.weights / s.mass_g);
    p.b.log_iterate_weights = safe_log(b_iter / s.mass_g);
  } else {
    p.entropic_constant = ma * mb;
    p.a.log_iterate_weights = safe_log(ia.weights);
    p.b.log_iterate_weights = safe_log(b_iter);
  }
  p.a.weights = std::move(ia.weights);
  p.a.boundary = std::move(ia.boundary);
  p.b.weights = std::move(ib.weights);
  p.b.boundary = std::move(ib.boundary);
  return p;
}

Problem build_symmetric_problem(const DiscreteMeasure& alpha, const CostSpec& cost,
                                const MarginalDivergence& div, Model model, double epsilon) {
  if (cost.is_explicit()) {
    throw Error(ErrorCode::kUnsupportedKind, "self-transport needs a pointwise ground cost");
  }
  check_cost_for(cost, div);
  SideInputs ia = side_inputs(alpha, div);
  const double ma = ia.weights.sum();
  if (!(ma > 0.0)) throw Error(ErrorCode::kZeroMass, "the solver needs a measure with positive mass");

  Problem p;
  p.cost = cost_matrix(cost, alpha, alpha);
  p.cost_t = p.cost.transpose();
  p.div = div;
  p.epsilon = epsilon;
  p.model = model;
  if (model == Model::kHomogeneous) {
    p.log_ref_scale = std::log(ma);
    p.entropic_constant = ma;
    p.a.log_iterate_weights = safe_log(ia.weights / ma);
  } else {
    p.entropic_constant = ma * ma;
    p.a.log_iterate_weights = safe_log(ia.weights);
  }
  p.a.weights = std::move(ia.weights);
  p.a.boundary = std::move(ia.boundary);
  p.b = p.a;
  return p;
}

}  // namespace hurot::detail
