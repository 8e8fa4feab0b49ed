#include "hurot/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hurot/error.hpp"

namespace hurot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// x log(x / y) with 0 log 0 = 0; y > 0.
double xlogxy(double x, double y) { return x > 0.0 ? x * std::log(x / y) : 0.0; }

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
}

}  // namespace

MarginalDivergence MarginalDivergence::kl(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorCode::kInvalidArgument, "KL strength rho must be positive");
  }
  return MarginalDivergence(KullbackLeibler{rho});
}

double MarginalDivergence::phi_at_zero() const {
  return std::visit(Overloaded{
                        [](const Balanced&) { return kInf; },
                        [](const KullbackLeibler& k) { return k.rho; },
                        [](const TotalVariation&) { return 1.0; },
                        [](const OtbSpatial&) { return 1.0; },
                    },
                    kind_);
}

std::string MarginalDivergence::name() const {
  return std::visit(Overloaded{
                        [](const Balanced&) { return std::string("balanced"); },
                        [](const KullbackLeibler& k) { return fmt::format("kl:rho={}", k.rho); },
                        [](const TotalVariation&) { return std::string("tv"); },
                        [](const OtbSpatial& o) {
                          return std::string(o.domain.is_half_plane() ? "otb:halfplane" : "otb:box");
                        },
                    },
                    kind_);
}

double phi_boundary(double boundary_cost, double p) {
  if (p < 0.0) return kInf;
  if (boundary_cost > 0.0 && p > 1.0 / boundary_cost) return kInf;
  return std::abs(1.0 - boundary_cost * p);
}

double phi(const MarginalDivergence& div, double p, std::span<const double> x) {
  if (p < 0.0) return kInf;
  return std::visit(
      Overloaded{
          [&](const Balanced&) { return p == 1.0 ? 0.0 : kInf; },
          [&](const KullbackLeibler& k) { return k.rho * (xlogxy(p, 1.0) - p + 1.0); },
          [&](const TotalVariation&) { return std::abs(1.0 - p); },
          [&](const OtbSpatial& o) {
            if (x.empty()) {
              throw Error(ErrorCode::kMissingLocation, "the boundary divergence needs a location");
            }
            const Eigen::Map<const Eigen::VectorXd> loc(x.data(), static_cast<Eigen::Index>(x.size()));
            return phi_boundary(boundary_cost(o.domain, loc), p);
          },
      },
      div.kind());
}

double phi_star(const MarginalDivergence& div, double q) {
  return std::visit(Overloaded{
                        [&](const Balanced&) { return q; },
                        [&](const KullbackLeibler& k) { return k.rho * std::expm1(q / k.rho); },
                        [&](const TotalVariation&) { return q > 1.0 ? kInf : std::max(-1.0, q); },
                        [&](const OtbSpatial&) -> double {
                          throw Error(ErrorCode::kUnsupportedKind,
                                      "the boundary divergence has no pointwise Legendre transform");
                        },
                    },
                    div.kind());
}

double aprox(const MarginalDivergence& div, double epsilon, double p) {
  check_epsilon(epsilon);
  return std::visit(Overloaded{
                        [&](const Balanced&) { return p; },
                        [&](const KullbackLeibler& k) { return k.rho / (k.rho + epsilon) * p; },
                        [&](const TotalVariation&) { return std::clamp(p, -1.0, 1.0); },
                        [&](const OtbSpatial&) -> double {
                          throw Error(ErrorCode::kUnsupportedKind,
                                      "the boundary divergence uses its own clamped update");
                        },
                    },
                    div.kind());
}

double eval_divergence(const MarginalDivergence& div, const Eigen::VectorXd& mu,
                       const Eigen::VectorXd& nu, const Eigen::VectorXd& boundary, double slack) {
  if (mu.size() != nu.size()) {
    throw Error(ErrorCode::kShapeMismatch, "divergence arguments have different supports");
  }
  if (div.is_otb() && boundary.size() != nu.size()) {
    throw Error(ErrorCode::kMissingLocation, "boundary costs are required for every atom");
  }
  const double tolerance = slack * nu.sum();
  double total = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const double m = mu[i];
    const double n = nu[i];
    if (m < 0.0) return kInf;
    const double term = std::visit(
        Overloaded{
            [&](const Balanced&) { return std::abs(m - n) <= tolerance ? 0.0 : kInf; },
            [&](const KullbackLeibler& k) {
              if (n == 0.0) return m == 0.0 ? 0.0 : kInf;
              return k.rho * (xlogxy(m, n) - m + n);
            },
            [&](const TotalVariation&) { return std::abs(m - n); },
            [&](const OtbSpatial&) {
              const double c = boundary[i];
              if (c == 0.0 || m == 0.0) return n;
              if (n == 0.0) return kInf;
              // n * phi(x, m / n) with the domain p <= (1 + slack) / c.
              if (c * m > (1.0 + slack) * n) return kInf;
              return std::abs(n - c * m);
            },
        },
        div.kind());
    total += term;
  }
  return total;
}

double eval_divergence(const MarginalDivergence& div, const DiscreteMeasure& mu,
                       const DiscreteMeasure& nu, double slack) {
  Eigen::VectorXd boundary;
  if (div.is_otb()) boundary = boundary_costs(div.domain(), nu);
  return eval_divergence(div, mu.weights(), nu.weights(), boundary, slack);
}

double eval_kl(const TransportPlan& pi, const Eigen::MatrixXd& reference) {
  if (pi.rows() != reference.rows() || pi.cols() != reference.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "plan and reference have different shapes");
  }
  const Eigen::MatrixXd& p = pi.weights();
  double total = 0.0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      const double x = p(i, j);
      const double r = reference(i, j);
      if (r == 0.0) {
        if (x > 0.0) return kInf;
        continue;
      }
      total += xlogxy(x, r) - x + r;
    }
  }
  return total;
}

double eval_R(const TransportPlan& pi, const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) {
  if (pi.rows() != alpha.size() || pi.cols() != beta.size()) {
    throw Error(ErrorCode::kShapeMismatch, "plan does not match the supports");
  }
  const MassStats s = mass_stats(alpha.sum(), beta.sum());
  // KL(pi | a x b) + m(pi) log m_g + m_a - m(a) m(b), with the reference mass
  // cancelled analytically.
  const Eigen::MatrixXd& p = pi.weights();
  double total = 0.0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      const double x = p(i, j);
      if (x == 0.0) continue;
      const double r = alpha[i] * beta[j];
      if (r == 0.0) return kInf;
      total += x * std::log(x * s.mass_g / r) - x;
    }
  }
  return total + s.mass_a;
}

double eval_R(const TransportPlan& pi, const DiscreteMeasure& alpha, const DiscreteMeasure& beta) {
  return eval_R(pi, alpha.weights(), beta.weights());
}

TransportPlan::TransportPlan(Eigen::MatrixXd weights)
    : weights_(std::move(weights)),
      marginal_1_(weights_.rowwise().sum()),
      marginal_2_(weights_.colwise().sum().transpose()) {
  if (weights_.size() > 0 && !(weights_.minCoeff() >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "transport plans are non-negative");
  }
}

TransportPlan TransportPlan::scaled(double factor) const { return TransportPlan(weights_ * factor); }

}  // namespace hurot
