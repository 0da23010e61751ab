#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgf/schedule.hpp"
#include "dgf/simplex.hpp"

namespace dgf {

using SimplexMap = std::function<SimplexVector(const SimplexVector&)>;

/// Stacked state of the lifted time-invariant system: one simplex block per
/// phase of the switching period.
struct StackedState {
  std::vector<SimplexVector> blocks;
};

struct TrajectoryRecord {
  int issue = 0;          // 1-based, consecutive
  std::string matrix_id;  // id applied at this issue; empty on the final record
  SimplexVector state;
};

/// Ordered record of self-weight states over a simulation run.
struct Trajectory {
  std::vector<TrajectoryRecord> records;
  std::string schedule_description;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;

  int issues() const { return static_cast<int>(records.size()); }
  const SimplexVector& state_at(int issue) const;  // 1-based
};

/// Outcome of a fixed-point or periodic-orbit search.
struct OrbitReport {
  bool converged = false;
  std::vector<SimplexVector> orbit;  // one state per phase, phase order
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

/// Self-weight update map of a single admissible topology: one issue of
/// discussion followed by reflected appraisal. The dominant left eigenvector
/// is computed once, up front.
SimplexMap single_issue_map(const InteractionMatrix& C);

/// Runs the per-issue update x(s+1) = F_{sigma(s)}(x(s)) for
/// s = 1..num_issues and records every state, x(1) through
/// x(num_issues + 1). The start must not be a vertex and every catalog
/// matrix must be admissible.
Trajectory simulate(const Schedule& schedule, const SimplexVector& x1, int num_issues);

/// Composition of the per-issue maps over one full cycle, starting at
/// `start_phase` (1-based): applies the maps of phases p, p+1, ..., p+M-1 in
/// order. A fixed point of this map is the phase-p state of a periodic
/// orbit. Constant schedules give the single-issue map.
SimplexMap composed_cycle_map(const Schedule& schedule, int start_phase);

/// Packs M consecutive states into the stacked lifted state.
StackedState lift(std::span<const SimplexVector> segment);

/// Inverse of lift; unlift(lift(seg)) == seg exactly.
std::vector<SimplexVector> unlift(const StackedState& y);

/// Number of leading issues discarded before windowed orbit comparison.
int orbit_detection_burn_in(int period);

/// Picard iteration of `map` from x0 until the update moves less than tol
/// in L-infinity, then verifies the residual at the returned point.
/// Non-convergence within max_iter is reported, not thrown. x0 must not be
/// a vertex (vertices are trivially fixed).
OrbitReport find_fixed_point(const SimplexMap& map, const SimplexVector& x0, double tol = 1e-12,
                             int max_iter = 100000);

/// Windowed periodicity test: after a burn-in of max(50, 10*period) issues,
/// compares states one period apart over the last (up to) 10 full periods.
/// Converged iff the worst such deviation is at most tol; the reported orbit
/// averages the window states by phase. Requires
/// traj.issues() >= burn-in + 2*period.
OrbitReport detect_periodic_orbit(const Trajectory& traj, int period, double tol = 1e-9);

/// Expands a fixed point of the phase-`phase` cycle map into all M phase
/// states by walking the per-issue maps around the cycle. Index j of the
/// result is the phase j+1 state.
std::vector<SimplexVector> orbit_phase_points(const Schedule& schedule, int phase,
                                              const SimplexVector& y_star);

struct InvariantSetCheck {
  bool holds = false;
  /// Largest image component seen; containment means <= 1 - r.
  double worst_component = 0.0;
  /// Input point whose image escaped, when holds is false.
  std::optional<SimplexVector> counterexample;
};

/// Samples the truncated simplex A = {y : 0 <= y_i <= 1 - r} (always
/// including all of its extreme points) and checks that `map` sends every
/// sample back into A. Requires 0 < r <= 1 - 1/n.
InvariantSetCheck verify_invariant_set(const SimplexMap& map, int n, double r, int num_samples,
                                       std::uint64_t seed);

/// Given a fixed point y1* of f2 ∘ f1, checks that the companion phase point
/// f1(y1*) is a fixed point of f1 ∘ f2 and that f2 maps it back onto y1*,
/// both within tol.
bool verify_cross_fixed_point_relation(const SimplexVector& y1_star, const SimplexMap& f1,
                                       const SimplexMap& f2, double tol);

}  // namespace dgf
