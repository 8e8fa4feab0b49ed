#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hurot/divergence.hpp"
#include "hurot/kernel.hpp"
#include "hurot/measure.hpp"
#include "hurot/solver.hpp"

namespace hurot {

enum class GridScale { kLinear, kLog };
enum class SweepMetric { kCost, kSinkhornDivergence };

struct SweepSpec {
  double lambda_min = 1.0;
  double lambda_max = 100.0;
  int num_points = 20;
  GridScale scale = GridScale::kLog;
  SweepMetric metric = SweepMetric::kSinkhornDivergence;
  Model model = Model::kHomogeneous;
  std::uint64_t seed = 0;
  // Keep the cross-term transport plan of every grid point.
  bool keep_plans = false;

  // lambda_min < lambda_max and num_points >= 2, except the single-point grid
  // lambda_min == lambda_max with num_points == 1.
  void validate() const;
  std::vector<double> grid() const;
};

struct SweepResult {
  std::vector<double> lambdas;
  std::vector<double> values;
  // slopes[i]: log-log slope to the next grid point (to the previous one for
  // the last point); NaN when undefined.
  std::vector<double> slopes;
  std::vector<int> iterations;
  std::vector<bool> converged;
  std::vector<std::optional<TransportPlan>> plan_snapshots;
};

// values[i] = metric at (lambda_i alpha, lambda_i beta); grid points are solved
// concurrently (HUROT_THREADS caps the worker count).
SweepResult lambda_sweep(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                         const CostSpec& cost, const MarginalDivergence& div,
                         const SolverConfig& cfg, const SweepSpec& spec);

struct SlopeFit {
  double global_slope = 0.0;
  std::vector<int> breakpoints;
};

inline constexpr double kBreakpointJump = 0.05;

// Least-squares slope of log(values) against log(lambdas); breakpoints are
// interior grid indices where the two-point slope jumps by more than
// kBreakpointJump.
SlopeFit loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& values);

// Two-point log-log slopes, laid out as SweepResult::slopes.
std::vector<double> local_slopes(const std::vector<double>& lambdas,
                                 const std::vector<double>& values);

// max |b - r a| / max(r a).
double plan_proportionality(const TransportPlan& plan_a, const TransportPlan& plan_b,
                            double expected_ratio);

// |OT(l a, l b) - (l OT(a, b) + eps l (l - 1) m^2 - eps log(l) l m)| for the
// standard balanced model.
double closed_form_balanced_residual(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                                     const CostSpec& cost, const SolverConfig& cfg,
                                     double lambda);

// Worker count for sweeps: HUROT_THREADS if set and positive, else hardware.
int sweep_threads();

}  // namespace hurot
