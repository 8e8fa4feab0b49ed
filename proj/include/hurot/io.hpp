#pragma once

#include <string>
#include <string_view>

#include "hurot/boundary.hpp"
#include "hurot/divergence.hpp"
#include "hurot/experiments.hpp"
#include "hurot/kernel.hpp"
#include "hurot/measure.hpp"
#include "hurot/solver.hpp"

namespace hurot {

// Shortest form is not used: every double is printed with 17 significant digits.
std::string format_double(double value);

// {"dim": d, "points": [[...], ...], "weights": [...]}; weights default to 1.
DiscreteMeasure parse_measure_json(std::string_view text);
std::string measure_to_json(const DiscreteMeasure& mu);

DiscreteMeasure read_measure_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

std::string solve_result_to_json(const SolveResult& result);

// Header: lambda,value,slope_local,iterations,converged
std::string sweep_to_csv(const SweepResult& sweep);

// balanced | kl:rho=<float> | tv | otb:<domain>
MarginalDivergence parse_divergence(std::string_view text);
// halfplane | box:lo1,hi1,lo2,hi2,...
BoundaryDomain parse_domain(std::string_view text, GroundCost cost = GroundCost::kSqEuclidean);
// sqeuclidean | euclidean | matrix:<path.csv>
CostSpec parse_cost(std::string_view text);
// min:max:num:lin|log
SweepSpec parse_lambda_grid(std::string_view text);

Eigen::MatrixXd read_matrix_csv(const std::string& path);

}  // namespace hurot
