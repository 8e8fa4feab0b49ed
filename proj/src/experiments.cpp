#include "hurot/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "hurot/error.hpp"

namespace hurot {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = true;
  std::optional<TransportPlan> plan;
};

PointResult evaluate_point(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                           const CostSpec& cost, const MarginalDivergence& div,
                           const SolverConfig& cfg, const SweepSpec& spec, double lambda) {
  const DiscreteMeasure a = scale(alpha, lambda);
  const DiscreteMeasure b = scale(beta, lambda);
  const FlaggedValue v = spec.metric == SweepMetric::kCost
                             ? transport_cost(a, b, cost, div, cfg)
                             : sinkhorn_divergence(a, b, cost, div, cfg);
  PointResult out{v.value, v.iterations, v.converged, std::nullopt};
  if (spec.keep_plans) out.plan = solve(a, b, cost, div, cfg).plan;
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (!(lambda_min > 0.0) || !(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda bounds must be positive");
  }
  const bool single = num_points == 1 && lambda_min == lambda_max;
  if (!single && (num_points < 2 || !(lambda_min < lambda_max))) {
    throw Error(ErrorCode::kInvalidArgument,
                "lambda grid needs lambda_min < lambda_max and at least two points");
  }
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(num_points));
  if (num_points == 1) {
    out[0] = lambda_min;
    return out;
  }
  const double lo = scale == GridScale::kLog ? std::log(lambda_min) : lambda_min;
  const double hi = scale == GridScale::kLog ? std::log(lambda_max) : lambda_max;
  for (int k = 0; k < num_points; ++k) {
    const double x = lo + (hi - lo) * k / (num_points - 1);
    out[k] = scale == GridScale::kLog ? std::exp(x) : x;
  }
  out.front() = lambda_min;
  out.back() = lambda_max;
  return out;
}

int sweep_threads() {
  if (const char* env = std::getenv("HUROT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepResult lambda_sweep(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                         const CostSpec& cost, const MarginalDivergence& div,
                         const SolverConfig& cfg_in, const SweepSpec& spec) {
  SolverConfig cfg = cfg_in;
  cfg.model = spec.model;
  cfg.on_iterate = nullptr;
  cfg.validate();
  const std::vector<double> lambdas = spec.grid();
  const std::size_t n = lambdas.size();
  std::vector<PointResult> points(n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        points[k] = evaluate_point(alpha, beta, cost, div, cfg, spec, lambdas[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(sweep_threads(), static_cast<int>(n));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  SweepResult out;
  out.lambdas = lambdas;
  for (auto& p : points) {
    out.values.push_back(p.value);
    out.iterations.push_back(p.iterations);
    out.converged.push_back(p.converged);
    out.plan_snapshots.push_back(std::move(p.plan));
  }
  out.slopes = local_slopes(out.lambdas, out.values);
  return out;
}

std::vector<double> local_slopes(const std::vector<double>& lambdas,
                                 const std::vector<double>& values) {
  if (lambdas.size() != values.size()) {
    throw Error(ErrorCode::kShapeMismatch, "lambdas and values differ in length");
  }
  const std::size_t n = values.size();
  auto slope = [&](std::size_t i, std::size_t j) {
    if (!(values[i] > 0.0) || !(values[j] > 0.0) || lambdas[i] == lambdas[j]) return kNaN;
    return (std::log(values[j]) - std::log(values[i])) / (std::log(lambdas[j]) - std::log(lambdas[i]));
  };
  std::vector<double> out(n, kNaN);
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = slope(i, i + 1);
  if (n >= 2) out[n - 1] = out[n - 2];
  return out;
}

SlopeFit loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& values) {
  if (lambdas.size() != values.size()) {
    throw Error(ErrorCode::kShapeMismatch, "lambdas and values differ in length");
  }
  if (values.size() < 2) throw Error(ErrorCode::kInvalidArgument, "a slope needs two points");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !(lambdas[i] > 0.0)) {
      throw Error(ErrorCode::kNonPositiveValues, "log-log fit needs positive values");
    }
  }
  const std::size_t n = values.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(lambdas[i]);
    my += std::log(values[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(lambdas[i]) - mx;
    sxy += dx * (std::log(values[i]) - my);
    sxx += dx * dx;
  }
  SlopeFit fit;
  fit.global_slope = sxy / sxx;
  const std::vector<double> s = local_slopes(lambdas, values);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs(s[i] - s[i - 1]) > kBreakpointJump) fit.breakpoints.push_back(static_cast<int>(i));
  }
  return fit;
}

double plan_proportionality(const TransportPlan& plan_a, const TransportPlan& plan_b,
                            double expected_ratio) {
  if (plan_a.rows() != plan_b.rows() || plan_a.cols() != plan_b.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "plans differ in shape");
  }
  const Eigen::MatrixXd expected = expected_ratio * plan_a.weights();
  const double denom = expected.size() == 0 ? 0.0 : expected.maxCoeff();
  const double num = expected.size() == 0 ? 0.0 : (plan_b.weights() - expected).cwiseAbs().maxCoeff();
  if (num == 0.0) return 0.0;
  return denom > 0.0 ? num / denom : std::numeric_limits<double>::infinity();
}

double closed_form_balanced_residual(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                                     const CostSpec& cost, const SolverConfig& cfg_in,
                                     double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::kNonPositiveScale, "lambda must be positive");
  SolverConfig cfg = cfg_in;
  cfg.model = Model::kStandard;
  const MarginalDivergence div = MarginalDivergence::balanced();
  const double base = transport_cost(alpha, beta, cost, div, cfg).value;
  if (lambda == 1.0) return 0.0;
  const double scaled =
      transport_cost(scale(alpha, lambda), scale(beta, lambda), cost, div, cfg).value;
  const double m = total_mass(alpha);
  const double eps = cfg.epsilon;
  const double rhs = lambda * base + eps * lambda * (lambda - 1.0) * m * m -
                     eps * std::log(lambda) * lambda * m;
  return std::abs(scaled - rhs);
}

}  // namespace hurot
