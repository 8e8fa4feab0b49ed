#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "hurot/kernel.hpp"
#include "hurot/measure.hpp"

namespace hurot {

// Open half-plane {(t1, t2) : t1 < t2}; its boundary is the diagonal.
struct HalfPlane {};

// Open axis-aligned box; one [lo, hi] interval per axis.
struct Box {
  std::vector<std::pair<double, double>> bounds;
};

// Domain Omega together with the ground cost used to measure the distance
// to its boundary.
struct BoundaryDomain {
  std::variant<HalfPlane, Box> shape = HalfPlane{};
  GroundCost cost_kind = GroundCost::kSqEuclidean;

  static BoundaryDomain half_plane(GroundCost cost = GroundCost::kSqEuclidean);
  static BoundaryDomain box(std::vector<std::pair<double, double>> bounds,
                            GroundCost cost = GroundCost::kSqEuclidean);

  bool is_half_plane() const { return std::holds_alternative<HalfPlane>(shape); }
  // Dimension required of the points, or -1 when unconstrained.
  int required_dim() const;
};

// c_Delta(x) = c(x, boundary). Throws kOutsideDomain when x is not in the
// closure of the domain.
double boundary_cost(const BoundaryDomain& domain, const Eigen::Ref<const Eigen::VectorXd>& x);

// P(x): a boundary point with c(x, P(x)) = c_Delta(x).
Eigen::VectorXd project(const BoundaryDomain& domain, const Eigen::Ref<const Eigen::VectorXd>& x);

// c_Delta evaluated at every atom of mu.
Eigen::VectorXd boundary_costs(const BoundaryDomain& domain, const DiscreteMeasure& mu);

}  // namespace hurot
