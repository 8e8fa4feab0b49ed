#include "hurot/measure.hpp"

#include <cmath>
#include <string>

#include "hurot/error.hpp"

namespace hurot {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroMass: return "zero mass";
    case ErrorCode::kNonPositiveScale: return "non-positive scale";
    case ErrorCode::kMissingLocation: return "missing location";
    case ErrorCode::kUnsupportedKind: return "unsupported kind";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
    case ErrorCode::kDimMismatch: return "dimension mismatch";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kOutsideDomain: return "outside domain";
    case ErrorCode::kNonPositiveValues: return "non-positive values";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kParse: return "parse error";
  }
  return "unknown";
}

DiscreteMeasure::DiscreteMeasure(int dim) : DiscreteMeasure(dim, Eigen::MatrixXd(0, dim), Eigen::VectorXd(0)) {}

DiscreteMeasure::DiscreteMeasure(Eigen::MatrixXd points, Eigen::VectorXd weights)
    : DiscreteMeasure(static_cast<int>(points.cols()), Eigen::MatrixXd(points), std::move(weights)) {}

DiscreteMeasure::DiscreteMeasure(int dim, Eigen::MatrixXd points, Eigen::VectorXd weights)
    : dim_(dim), points_(std::move(points)), weights_(std::move(weights)) {
  if (dim_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "measure dimension must be positive");
  }
  if (points_.rows() != weights_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "measure has " + std::to_string(points_.rows()) +
                                               " points but " + std::to_string(weights_.size()) +
                                               " weights");
  }
  if (points_.rows() > 0 && points_.cols() != dim_) {
    throw Error(ErrorCode::kDimMismatch, "points do not have dimension " + std::to_string(dim_));
  }
  if (points_.rows() == 0) {
    points_.resize(0, dim_);
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be finite and non-negative");
    }
  }
  if (!points_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "point coordinates must be finite");
  }
}

DiscreteMeasure DiscreteMeasure::with_unit_weights(Eigen::MatrixXd points) {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(points.rows());
  return DiscreteMeasure(std::move(points), std::move(w));
}

DiscreteMeasure DiscreteMeasure::with_weights(Eigen::VectorXd weights) const {
  return DiscreteMeasure(dim_, points_, std::move(weights));
}

bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  return a.dim_ == b.dim_ && a.points_.rows() == b.points_.rows() && a.points_ == b.points_ &&
         a.weights_ == b.weights_;
}

double total_mass(const DiscreteMeasure& mu) { return mu.weights().sum(); }

MassStats mass_stats(double mass_alpha, double mass_beta) {
  if (!(mass_alpha > 0.0) || !(mass_beta > 0.0)) {
    throw Error(ErrorCode::kZeroMass, "mass statistics need two positive masses");
  }
  MassStats s;
  s.mass_a = 0.5 * (mass_alpha + mass_beta);
  const double product = mass_alpha * mass_beta;
  s.mass_g = std::isnormal(product) && std::isfinite(product) ? std::sqrt(product)
                                                              : std::sqrt(mass_alpha) * std::sqrt(mass_beta);
  s.mass_h = 2.0 / (1.0 / mass_alpha + 1.0 / mass_beta);
  return s;
}

MassStats mass_stats(const DiscreteMeasure& alpha, const DiscreteMeasure& beta) {
  return mass_stats(total_mass(alpha), total_mass(beta));
}

DiscreteMeasure scale(const DiscreteMeasure& mu, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kNonPositiveScale, "scale factor must be positive");
  }
  return mu.with_weights(mu.weights() * lambda);
}

std::pair<DiscreteMeasure, DiscreteMeasure> normalize_pair(const DiscreteMeasure& alpha,
                                                           const DiscreteMeasure& beta) {
  const double m_g = mass_stats(alpha, beta).mass_g;
  return {alpha.with_weights(alpha.weights() / m_g), beta.with_weights(beta.weights() / m_g)};
}

}  // namespace hurot
