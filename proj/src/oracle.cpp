#include "hurot/oracle.hpp"

#include <cmath>
#include <limits>

#include "hurot/error.hpp"
#include "min_cost_flow.hpp"

namespace hurot {

namespace {

constexpr Eigen::Index kMaxAtoms = 64;

std::vector<std::int64_t> to_units(const Eigen::VectorXd& w) {
  std::vector<std::int64_t> units(static_cast<std::size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    units[i] = static_cast<std::int64_t>(std::llround(w[i] / kFlowResolution));
  }
  return units;
}

std::int64_t sum(const std::vector<std::int64_t>& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

void check_size(const DiscreteMeasure& alpha, const DiscreteMeasure& beta) {
  if (alpha.size() > kMaxAtoms || beta.size() > kMaxAtoms) {
    throw Error(ErrorCode::kInvalidArgument, "exact oracles accept at most 64 atoms per side");
  }
}

}  // namespace

double exact_balanced_ot(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                         const CostSpec& cost) {
  check_size(alpha, beta);
  const double ma = total_mass(alpha);
  const double mb = total_mass(beta);
  if (std::abs(ma - mb) > 1e-9 * std::max(ma, mb)) {
    throw Error(ErrorCode::kInfeasible, "infeasible: unequal masses");
  }
  const Eigen::MatrixXd c = cost_matrix(cost, alpha, beta);
  std::vector<std::int64_t> supply = to_units(alpha.weights());
  std::vector<std::int64_t> demand = to_units(beta.weights());
  // Absorb the rounding mismatch in the heaviest sink.
  const std::int64_t diff = sum(supply) - sum(demand);
  if (diff != 0 && !demand.empty()) {
    auto heaviest = std::max_element(demand.begin(), demand.end());
    *heaviest = std::max<std::int64_t>(0, *heaviest + diff);
  }
  const int n = static_cast<int>(alpha.size());
  const int m = static_cast<int>(beta.size());
  const int s = n + m;
  const int t = s + 1;
  detail::MinCostFlow g(n + m + 2);
  for (int i = 0; i < n; ++i) {
    g.add_arc(s, i, supply[i], 0.0);
    for (int j = 0; j < m; ++j) g.add_arc(i, n + j, std::numeric_limits<std::int64_t>::max() / 4, c(i, j));
  }
  for (int j = 0; j < m; ++j) g.add_arc(n + j, t, demand[j], 0.0);
  const auto r = g.run(s, t, sum(demand));
  return r.cost * kFlowResolution;
}

double augmented_transport(const Eigen::MatrixXd& cost, const Eigen::VectorXd& source_weights,
                           const Eigen::VectorXd& sink_weights,
                           const Eigen::VectorXd& source_exit, const Eigen::VectorXd& sink_entry) {
  const int n = static_cast<int>(source_weights.size());
  const int m = static_cast<int>(sink_weights.size());
  if (cost.rows() != n || cost.cols() != m || source_exit.size() != n || sink_entry.size() != m) {
    throw Error(ErrorCode::kShapeMismatch, "augmented transport inputs disagree in size");
  }
  const std::vector<std::int64_t> supply = to_units(source_weights);
  const std::vector<std::int64_t> demand = to_units(sink_weights);
  const std::int64_t total_supply = sum(supply);
  const std::int64_t total_demand = sum(demand);
  const std::int64_t unbounded = std::numeric_limits<std::int64_t>::max() / 4;

  // Nodes: sources, sinks, reservoir source, reservoir sink, s, t.
  const int res_src = n + m;
  const int res_snk = res_src + 1;
  const int s = res_snk + 1;
  const int t = s + 1;
  detail::MinCostFlow g(t + 1);
  for (int i = 0; i < n; ++i) {
    g.add_arc(s, i, supply[i], 0.0);
    for (int j = 0; j < m; ++j) g.add_arc(i, n + j, unbounded, cost(i, j));
    g.add_arc(i, res_snk, unbounded, source_exit[i]);
  }
  for (int j = 0; j < m; ++j) {
    g.add_arc(res_src, n + j, unbounded, sink_entry[j]);
    g.add_arc(n + j, t, demand[j], 0.0);
  }
  g.add_arc(s, res_src, total_demand, 0.0);
  g.add_arc(res_snk, t, total_supply, 0.0);
  g.add_arc(res_src, res_snk, unbounded, 0.0);
  const auto r = g.run(s, t, total_supply + total_demand);
  return r.cost * kFlowResolution;
}

double exact_partial_ot_tv(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                           const CostSpec& cost) {
  check_size(alpha, beta);
  return augmented_transport(cost_matrix(cost, alpha, beta), alpha.weights(), beta.weights(),
                             Eigen::VectorXd::Ones(alpha.size()),
                             Eigen::VectorXd::Ones(beta.size()));
}

std::vector<int> solve_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "assignment needs a square cost matrix");
  }
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // Potentials u (rows), v (columns); 1-based with column 0 as the free slot.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> owner(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    owner[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = owner[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (owner[j] != 0) assignment[owner[j] - 1] = j - 1;
  }
  return assignment;
}

}  // namespace hurot
