#include "hurot/boundary.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hurot/error.hpp"

namespace hurot {

BoundaryDomain BoundaryDomain::half_plane(GroundCost cost) {
  return BoundaryDomain{HalfPlane{}, cost};
}

BoundaryDomain BoundaryDomain::box(std::vector<std::pair<double, double>> bounds, GroundCost cost) {
  if (bounds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "box needs at least one axis");
  }
  for (const auto& [lo, hi] : bounds) {
    if (!(lo < hi)) {
      throw Error(ErrorCode::kInvalidArgument, "box bounds must satisfy lo < hi");
    }
  }
  return BoundaryDomain{Box{std::move(bounds)}, cost};
}

int BoundaryDomain::required_dim() const {
  if (is_half_plane()) return 2;
  return static_cast<int>(std::get<Box>(shape).bounds.size());
}

namespace {

void check_dim(const BoundaryDomain& domain, Eigen::Index dim) {
  if (dim != domain.required_dim()) {
    throw Error(ErrorCode::kDimMismatch,
                "domain expects points of dimension " + std::to_string(domain.required_dim()));
  }
}

double from_euclidean_distance(GroundCost kind, double d) {
  return kind == GroundCost::kSqEuclidean ? d * d : d;
}

// Distance to the nearest face and the axis/face realizing it.
struct NearestFace {
  double distance;
  Eigen::Index axis;
  double face;
};

NearestFace nearest_face(const Box& box, const Eigen::Ref<const Eigen::VectorXd>& x) {
  NearestFace best{std::numeric_limits<double>::infinity(), 0, 0.0};
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const auto [lo, hi] = box.bounds[static_cast<std::size_t>(k)];
    if (x[k] < lo || x[k] > hi) {
      throw Error(ErrorCode::kOutsideDomain, "point lies outside the box");
    }
    if (x[k] - lo < best.distance) best = {x[k] - lo, k, lo};
    if (hi - x[k] < best.distance) best = {hi - x[k], k, hi};
  }
  return best;
}

}  // namespace

double boundary_cost(const BoundaryDomain& domain, const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_dim(domain, x.size());
  if (domain.is_half_plane()) {
    const double gap = x[1] - x[0];
    if (gap < 0.0) {
      throw Error(ErrorCode::kOutsideDomain, "half-plane points need birth <= death");
    }
    return from_euclidean_distance(domain.cost_kind, gap / std::sqrt(2.0));
  }
  return from_euclidean_distance(domain.cost_kind, nearest_face(std::get<Box>(domain.shape), x).distance);
}

Eigen::VectorXd project(const BoundaryDomain& domain, const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_dim(domain, x.size());
  if (domain.is_half_plane()) {
    if (x[1] < x[0]) {
      throw Error(ErrorCode::kOutsideDomain, "half-plane points need birth <= death");
    }
    const double mid = 0.5 * (x[0] + x[1]);
    return Eigen::Vector2d(mid, mid);
  }
  const NearestFace nf = nearest_face(std::get<Box>(domain.shape), x);
  Eigen::VectorXd p = x;
  p[nf.axis] = nf.face;
  return p;
}

Eigen::VectorXd boundary_costs(const BoundaryDomain& domain, const DiscreteMeasure& mu) {
  Eigen::VectorXd out(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    out[i] = boundary_cost(domain, mu.points().row(i).transpose());
  }
  return out;
}

}  // namespace hurot
