#include "dgf/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "dgf/errors.hpp"
#include "dgf/rng.hpp"

namespace dgf {

CheckResult check_simplex(const Eigen::VectorXd& x, double tol) {
  CheckResult result;
  result.name = "simplex_membership";
  result.tolerance = tol;
  const double negativity = std::max(0.0, -x.minCoeff());
  const double sum_error = std::abs(x.sum() - 1.0);
  result.worst_violation = std::max(negativity, sum_error);
  result.passed = result.worst_violation <= tol;
  if (!result.passed) result.witness = x;
  return result;
}

CheckResult check_vertex_fixed_points(const SimplexMap& map, int n, double tol) {
  CheckResult result;
  result.name = "vertex_fixed_points";
  result.tolerance = tol;
  result.worst_violation = 0.0;
  for (int i = 0; i < n; ++i) {
    const SimplexVector vertex = SimplexVector::vertex(n, i);
    const double deviation = linf_distance(map(vertex), vertex);
    if (deviation > result.worst_violation) {
      result.worst_violation = deviation;
      result.witness = vertex.values();
    }
  }
  result.passed = result.worst_violation <= tol;
  if (result.passed) result.witness.reset();
  return result;
}

CheckResult check_continuity_sampling(const SimplexMap& map, int n, int num_pairs, double delta,
                                      double lipschitz_bound, std::uint64_t seed) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  if (n < 2) throw PreconditionError("n must be at least 2");
  Rng rng(seed);

  CheckResult result;
  result.name = "continuity_sampling";
  result.tolerance = 0.0;
  result.worst_violation = -std::numeric_limits<double>::infinity();

  auto clamp_to_simplex = [n](Eigen::VectorXd v) {
    for (int i = 0; i < n; ++i) v(i) = std::max(v(i), 0.0);
    const double sum = v.sum();
    return Eigen::VectorXd(v / sum);
  };

  int produced = 0;
  while (produced < num_pairs) {
    Eigen::VectorXd base;
    if (produced < num_pairs / 2) {
      // Near-vertex neighborhood, the delicate region of the map.
      const int i = produced % n;
      const double eps = 1e-3 * rng.uniform(0.1, 1.0);
      base = (1.0 - eps) * Eigen::VectorXd::Unit(n, i) + eps * rng.simplex_point(n);
      base = clamp_to_simplex(base);
    } else {
      base = rng.simplex_point(n);
    }
    // Sum-zero direction as the difference of two simplex points.
    const Eigen::VectorXd direction = rng.simplex_point(n) - rng.simplex_point(n);
    Eigen::VectorXd other = clamp_to_simplex(base + delta * rng.uniform() * direction);
    const double distance = (base - other).norm();
    if (distance <= 0.0 || distance > delta) continue;
    ++produced;

    const SimplexVector a(base);
    const SimplexVector b(other);
    const double image_distance = (map(a).values() - map(b).values()).norm();
    const double violation = image_distance - lipschitz_bound * distance;
    if (violation > result.worst_violation) {
      result.worst_violation = violation;
      result.witness = base;
    }
  }
  result.passed = result.worst_violation <= result.tolerance;
  if (result.passed) result.witness.reset();
  return result;
}

CheckResult check_ordering(const SimplexVector& x_star, const SimplexVector& c, double tol) {
  if (x_star.size() != c.size()) throw PreconditionError("dimension mismatch");
  CheckResult result;
  result.name = "fixed_point_ordering";
  result.tolerance = 0.0;
  result.worst_violation = 0.0;
  const int n = x_star.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double violation = 0.0;
      if (c[i] < c[j] - tol) {
        // Strictly smaller eigenvector entry must give strictly less power.
        violation = x_star[i] - x_star[j];
      } else if (std::abs(c[i] - c[j]) <= tol) {
        violation = std::abs(x_star[i] - x_star[j]) - 10.0 * tol;
      }
      if (violation > result.worst_violation) {
        result.worst_violation = violation;
        result.witness = x_star.values();
      }
    }
  }
  result.passed = result.worst_violation <= result.tolerance;
  if (result.passed) result.witness.reset();
  return result;
}

CheckResult democratic_limit_check(const Trajectory& traj, double tol) {
  if (traj.records.empty()) throw PreconditionError("trajectory is empty");
  CheckResult result;
  result.name = "democratic_limit";
  result.tolerance = tol;
  const SimplexVector& final_state = traj.records.back().state;
  const int n = final_state.size();
  result.worst_violation =
      (final_state.values() - Eigen::VectorXd::Constant(n, 1.0 / n)).lpNorm<Eigen::Infinity>();
  result.passed = result.worst_violation <= tol;
  if (!result.passed) result.witness = final_state.values();
  return result;
}

}  // namespace dgf
