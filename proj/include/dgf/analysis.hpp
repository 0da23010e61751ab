#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "dgf/simplex.hpp"
#include "dgf/switching.hpp"

namespace dgf {

/// Result of one executable property check. passed holds exactly when
/// worst_violation <= tolerance; a failing check carries a witness input.
struct CheckResult {
  std::string name;
  bool passed = false;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::optional<Eigen::VectorXd> witness;
};

/// Simplex membership of a raw vector: min(x) >= -tol and |sum - 1| <= tol.
CheckResult check_simplex(const Eigen::VectorXd& x, double tol);

/// All n vertices are fixed under `map`, each within tol (tol = 0 demands
/// exact fixing).
CheckResult check_vertex_fixed_points(const SimplexMap& map, int n, double tol);

/// Samples pairs at distance <= delta (Euclidean), concentrating half of
/// them within 1e-3 of the vertices where curvature is worst, and verifies
/// ||map(x) - map(x')|| <= lipschitz_bound * ||x - x'||.
CheckResult check_continuity_sampling(const SimplexMap& map, int n, int num_pairs, double delta,
                                      double lipschitz_bound, std::uint64_t seed);

/// Pairwise order agreement between a converged fixed point and the
/// eigenvector that produced it: c_i < c_j - tol implies x*_i < x*_j, and
/// |c_i - c_j| <= tol implies |x*_i - x*_j| <= 10 * tol.
CheckResult check_ordering(const SimplexVector& x_star, const SimplexVector& c, double tol);

/// Final trajectory state within tol of equal social power (1/n, ..., 1/n).
CheckResult democratic_limit_check(const Trajectory& traj, double tol);

}  // namespace dgf
