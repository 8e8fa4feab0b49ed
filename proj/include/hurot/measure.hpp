#pragma once

#include <utility>

#include <Eigen/Dense>

namespace hurot {

// Weighted point cloud in R^d. Points are stored row-wise (one atom per row).
// Atoms with zero weight are kept so that plan indices stay aligned with the
// input supports.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(int dim = 1);
  DiscreteMeasure(Eigen::MatrixXd points, Eigen::VectorXd weights);
  DiscreteMeasure(int dim, Eigen::MatrixXd points, Eigen::VectorXd weights);

  // Unit weights on every atom.
  static DiscreteMeasure with_unit_weights(Eigen::MatrixXd points);

  int dim() const { return dim_; }
  Eigen::Index size() const { return weights_.size(); }
  bool empty() const { return weights_.size() == 0; }

  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  Eigen::VectorXd point(Eigen::Index i) const { return points_.row(i).transpose(); }

  // Same support, new weights.
  DiscreteMeasure with_weights(Eigen::VectorXd weights) const;

  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b);

 private:
  int dim_;
  Eigen::MatrixXd points_;
  Eigen::VectorXd weights_;
};

struct MassStats {
  double mass_a = 0.0;  // arithmetic mean
  double mass_g = 0.0;  // geometric mean
  double mass_h = 0.0;  // harmonic mean
};

double total_mass(const DiscreteMeasure& mu);

// Throws ErrorCode::kZeroMass when either mass is zero.
MassStats mass_stats(double mass_alpha, double mass_beta);
MassStats mass_stats(const DiscreteMeasure& alpha, const DiscreteMeasure& beta);

DiscreteMeasure scale(const DiscreteMeasure& mu, double lambda);

// (alpha / m_g, beta / m_g). The result does not depend on a common rescaling
// of the inputs.
std::pair<DiscreteMeasure, DiscreteMeasure> normalize_pair(const DiscreteMeasure& alpha,
                                                           const DiscreteMeasure& beta);

}  // namespace hurot
