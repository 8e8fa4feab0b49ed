#pragma once

#include <span>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "hurot/boundary.hpp"
#include "hurot/measure.hpp"
#include "hurot/plan.hpp"

namespace hurot {

struct Balanced {};
// rho * KL
struct KullbackLeibler {
  double rho = 1.0;
};
struct TotalVariation {};
// Spatially varying divergence of the boundary model: phi(x, p) = |1 - c_Delta(x) p|
// on [0, 1 / c_Delta(x)].
struct OtbSpatial {
  BoundaryDomain domain;
};

class MarginalDivergence {
 public:
  using Kind = std::variant<Balanced, KullbackLeibler, TotalVariation, OtbSpatial>;

  MarginalDivergence() : kind_(Balanced{}) {}

  static MarginalDivergence balanced() { return MarginalDivergence(Balanced{}); }
  static MarginalDivergence kl(double rho = 1.0);
  static MarginalDivergence tv() { return MarginalDivergence(TotalVariation{}); }
  static MarginalDivergence otb(BoundaryDomain domain) {
    return MarginalDivergence(OtbSpatial{std::move(domain)});
  }

  const Kind& kind() const { return kind_; }
  bool is_balanced() const { return std::holds_alternative<Balanced>(kind_); }
  bool is_otb() const { return std::holds_alternative<OtbSpatial>(kind_); }
  const BoundaryDomain& domain() const { return std::get<OtbSpatial>(kind_).domain; }

  // phi(0); +inf for Balanced.
  double phi_at_zero() const;

  std::string name() const;

 private:
  explicit MarginalDivergence(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

// Entropy function. An empty `x` means no location; required for OtbSpatial.
double phi(const MarginalDivergence& div, double p, std::span<const double> x = {});

// phi for OtbSpatial with the boundary cost already evaluated.
double phi_boundary(double boundary_cost, double p);

// Legendre transform. Not defined for OtbSpatial (kUnsupportedKind).
double phi_star(const MarginalDivergence& div, double q);

// Anisotropic proximity operator argmin_q eps exp((p - q) / eps) + phi*(q).
double aprox(const MarginalDivergence& div, double epsilon, double p);

// D_phi(mu | nu) summed atomwise over a shared index set. `slack` relaxes the
// hard constraints of Balanced (|mu_i - nu_i| <= slack * m(nu)) and OtbSpatial
// (p <= (1 + slack) / c_Delta); it is 0 for the exact divergence.
double eval_divergence(const MarginalDivergence& div, const DiscreteMeasure& mu,
                       const DiscreteMeasure& nu, double slack = 0.0);

// Weight-vector form. For OtbSpatial `boundary` holds c_Delta at each atom.
double eval_divergence(const MarginalDivergence& div, const Eigen::VectorXd& mu,
                       const Eigen::VectorXd& nu, const Eigen::VectorXd& boundary,
                       double slack = 0.0);

// Unnormalized KL(pi | r) = sum pi log(pi / r) - pi + r.
double eval_kl(const TransportPlan& pi, const Eigen::MatrixXd& reference);

// Homogeneous regularizer 1/2 (KL(pi | alpha/m(alpha) x beta) + KL(pi | alpha x beta/m(beta))).
double eval_R(const TransportPlan& pi, const DiscreteMeasure& alpha, const DiscreteMeasure& beta);
double eval_R(const TransportPlan& pi, const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta);

}  // namespace hurot
