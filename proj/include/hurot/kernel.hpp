#pragma once

#include <variant>

#include <Eigen/Dense>

#include "hurot/measure.hpp"

namespace hurot {

enum class GroundCost { kSqEuclidean, kEuclidean };

// Cost function c(x, y): one of the built-in ground costs, or an explicit
// n x m matrix indexed by (alpha atom, beta atom).
class CostSpec {
 public:
  CostSpec() : kind_(GroundCost::kSqEuclidean) {}
  CostSpec(GroundCost kind) : kind_(kind) {}  // NOLINT(google-explicit-constructor)

  static CostSpec sq_euclidean() { return CostSpec(GroundCost::kSqEuclidean); }
  static CostSpec euclidean() { return CostSpec(GroundCost::kEuclidean); }
  static CostSpec explicit_matrix(Eigen::MatrixXd values);

  bool is_explicit() const { return std::holds_alternative<Eigen::MatrixXd>(kind_); }
  // Only meaningful when !is_explicit().
  GroundCost ground() const { return std::get<GroundCost>(kind_); }
  const Eigen::MatrixXd& matrix() const { return std::get<Eigen::MatrixXd>(kind_); }

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y) const;

 private:
  std::variant<GroundCost, Eigen::MatrixXd> kind_;
};

double ground_cost(GroundCost kind, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

// C[i][j] = c(x_i, y_j).
Eigen::MatrixXd cost_matrix(const CostSpec& spec, const DiscreteMeasure& alpha,
                            const DiscreteMeasure& beta);

// Entrywise exp(-C / epsilon).
Eigen::MatrixXd gibbs_kernel(const Eigen::MatrixXd& cost, double epsilon);

// <mu, nu>_K = sum_ij mu_i nu_j exp(-c(x_i, y_j) / epsilon).
double kernel_inner(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& spec,
                    double epsilon);

// ||mu - nu||_K^2 for the Gibbs kernel of `spec`.
double kernel_norm_sq(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& spec,
                      double epsilon);

// Signed double integral of c against (alpha - beta) x (alpha - beta).
double mmd(const DiscreteMeasure& alpha, const DiscreteMeasure& beta, const CostSpec& spec);

}  // namespace hurot
