#pragma once

#include <Eigen/Dense>

namespace hurot {

// Non-negative n x m matrix with cached row (first) and column (second)
// marginals.
class TransportPlan {
 public:
  TransportPlan() = default;
  explicit TransportPlan(Eigen::MatrixXd weights);

  const Eigen::MatrixXd& weights() const { return weights_; }
  const Eigen::VectorXd& marginal_1() const { return marginal_1_; }
  const Eigen::VectorXd& marginal_2() const { return marginal_2_; }
  Eigen::Index rows() const { return weights_.rows(); }
  Eigen::Index cols() const { return weights_.cols(); }
  double mass() const { return weights_.sum(); }

  TransportPlan scaled(double factor) const;

 private:
  Eigen::MatrixXd weights_;
  Eigen::VectorXd marginal_1_;
  Eigen::VectorXd marginal_2_;
};

}  // namespace hurot
