#include "reference_oracle.hpp"

#include <cmath>
#include <limits>

namespace smba::oracle {

Vector analytic_box_solution(const Vector& c, const Vector& b) {
  if (c.size() != b.size()) throw std::invalid_argument("analytic_box_solution: size mismatch");
  return c.cwiseMin(b);
}

GridResult grid_bruteforce(const std::function<double(const Vector&)>& objective,
                           const std::function<bool(const Vector&)>& feasible, const GridSpec& grid) {
  const Index dim = grid.lower.size();
  if (dim < 1 || dim > 3 || grid.upper.size() != dim) {
    throw std::invalid_argument("grid_bruteforce: dimension must be 1..3");
  }
  if (grid.points_per_axis < 3) throw std::invalid_argument("grid_bruteforce: need >= 3 points per axis");
  for (Index d = 0; d < dim; ++d) {
    if (!std::isfinite(grid.lower(d)) || !std::isfinite(grid.upper(d)) || !(grid.lower(d) < grid.upper(d))) {
      throw std::invalid_argument("grid_bruteforce: bad bounds");
    }
  }
  const Index p = grid.points_per_axis;
  const Vector step = (grid.upper - grid.lower) / static_cast<double>(p - 1);
  long long total = 1;
  for (Index d = 0; d < dim; ++d) total *= p;

  GridResult best;
  best.value = std::numeric_limits<double>::infinity();
  Vector x(dim);
  for (long long node = 0; node < total; ++node) {
    long long rem = node;
    for (Index d = 0; d < dim; ++d) {
      const Index idx = static_cast<Index>(rem % p);
      rem /= p;
      // Endpoints exact so nested grids share nodes bitwise.
      x(d) = idx == p - 1 ? grid.upper(d) : grid.lower(d) + static_cast<double>(idx) * step(d);
    }
    if (!feasible(x)) continue;
    ++best.feasible_nodes;
    const double v = objective(x);
    if (v < best.value) {
      best.value = v;
      best.x = x;
    }
  }
  if (best.feasible_nodes == 0) throw OracleError("grid_bruteforce: no feasible grid node");
  return best;
}

Vector exact_ball_projection(const Vector& z, const Vector& w, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("exact_ball_projection: radius must be positive");
  const Vector d = z - w;
  const double norm = d.norm();
  if (norm <= r) return z;
  return w + (r / norm) * d;
}

}  // namespace smba::oracle
