#include "min_cost_flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace hurot::detail {

namespace {
constexpr double kRelaxTol = 1e-12;
}

MinCostFlow::MinCostFlow(int nodes) : out_(static_cast<std::size_t>(nodes)) {}

void MinCostFlow::add_arc(int from, int to, std::int64_t capacity, double cost) {
  out_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, capacity, cost});
  out_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, 0, -cost});
}

MinCostFlow::Result MinCostFlow::run(int s, int t, std::int64_t limit) {
  const int n = static_cast<int>(out_.size());
  const double inf = std::numeric_limits<double>::infinity();
  Result result;
  std::vector<double> dist(n);
  std::vector<int> via(n);
  std::vector<char> queued(n);
  while (result.flow < limit) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(via.begin(), via.end(), -1);
    std::fill(queued.begin(), queued.end(), 0);
    std::deque<int> queue{s};
    dist[s] = 0.0;
    queued[s] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      queued[u] = 0;
      for (int e : out_[u]) {
        const Arc& a = arcs_[e];
        if (a.capacity <= 0) continue;
        const double nd = dist[u] + a.cost;
        if (nd < dist[a.to] - kRelaxTol) {
          dist[a.to] = nd;
          via[a.to] = e;
          if (!queued[a.to]) {
            queued[a.to] = 1;
            queue.push_back(a.to);
          }
        }
      }
    }
    if (via[t] < 0) break;
    std::int64_t push = limit - result.flow;
    for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) push = std::min(push, arcs_[via[v]].capacity);
    for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].capacity -= push;
      arcs_[via[v] ^ 1].capacity += push;
    }
    result.flow += push;
    result.cost += static_cast<double>(push) * dist[t];
  }
  return result;
}

}  // namespace hurot::detail
