#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hurot/kernel.hpp"
#include "hurot/measure.hpp"

namespace hurot {

// Resolution used to turn weights into integer flow units.
inline constexpr double kFlowResolution = 1e-9;

// min <pi, c> over couplings with marginals alpha and beta. Requires equal
// masses (1e-9 relative) and at most 64 atoms per side.
double exact_balanced_ot(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                         const CostSpec& cost);

// min <c, pi> + TV(pi_1 - alpha) + TV(pi_2 - beta) (optimal partial transport).
double exact_partial_ot_tv(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                           const CostSpec& cost);

// Transportation problem where every source may also drain to a reservoir at
// price source_exit[i] and every sink may be filled from it at price
// sink_entry[j]. Weights are rounded to kFlowResolution.
double augmented_transport(const Eigen::MatrixXd& cost, const Eigen::VectorXd& source_weights,
                           const Eigen::VectorXd& sink_weights,
                           const Eigen::VectorXd& source_exit, const Eigen::VectorXd& sink_entry);

// Square assignment problem; returns the column assigned to every row.
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace hurot
