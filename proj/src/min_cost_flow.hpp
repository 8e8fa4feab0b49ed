#pragma once

#include <cstdint>
#include <vector>

namespace hurot::detail {

// Successive shortest paths on integer capacities with real arc costs.
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes);

  void add_arc(int from, int to, std::int64_t capacity, double cost);

  struct Result {
    std::int64_t flow = 0;
    double cost = 0.0;
  };
  // Sends up to `limit` units from s to t along cheapest residual paths.
  Result run(int s, int t, std::int64_t limit);

 private:
  struct Arc {
    int to;
    std::int64_t capacity;
    double cost;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
};

}  // namespace hurot::detail
