#include "dgf/switching.hpp"

#include <algorithm>
#include <memory>
#include <utility>

#include "dgf/dynamics.hpp"
#include "dgf/errors.hpp"
#include "dgf/rng.hpp"

namespace dgf {

namespace {

void check_admissible(const InteractionMatrix& C) {
  const ValidationReport report = validate(C.entries());
  if (!report.satisfies_assumption_1) {
    throw PreconditionError("matrix '" + C.id() +
                            "' is not admissible (needs row stochasticity, zero diagonal, "
                            "irreducibility, no star topology, n >= 3)");
  }
}

// Random convex combination of extreme points of the truncated simplex.
Eigen::VectorXd combination_of_extremes(Rng& rng, int n, double r) {
  const double cap = 1.0 - r;
  const int k = 2 + static_cast<int>(rng.integer(static_cast<std::uint64_t>(n)));
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  double total = 0.0;
  for (int t = 0; t < k; ++t) {
    const int i = static_cast<int>(rng.integer(n));
    int j = static_cast<int>(rng.integer(n - 1));
    if (j >= i) ++j;
    const double w = rng.uniform(0.05, 1.0);
    v(i) += w * cap;
    v(j) += w * r;
    total += w;
  }
  return v / total;
}

}  // namespace

const SimplexVector& Trajectory::state_at(int issue) const {
  if (issue < 1 || issue > issues()) {
    throw PreconditionError("issue " + std::to_string(issue) + " outside trajectory [1, " +
                            std::to_string(issues()) + "]");
  }
  return records[issue - 1].state;
}

SimplexMap single_issue_map(const InteractionMatrix& C) {
  check_admissible(C);
  auto c = std::make_shared<SimplexVector>(dominant_left_eigenvector(C));
  return [c](const SimplexVector& x) { return friedkin_map(x, *c); };
}

Trajectory simulate(const Schedule& schedule, const SimplexVector& x1, int num_issues) {
  if (num_issues < 1) throw PreconditionError("num_issues must be positive");
  if (x1.is_vertex()) {
    throw PreconditionError("initial self-weights must not be an autocratic vertex");
  }
  const MatrixCatalog& catalog = schedule.catalog();
  if (x1.size() != catalog.dimension()) {
    throw PreconditionError("initial state has n = " + std::to_string(x1.size()) +
                            ", catalog has n = " + std::to_string(catalog.dimension()));
  }

  std::map<std::string, SimplexVector> eigenvector;
  for (const auto& id : catalog.ids()) {
    const InteractionMatrix& C = catalog.at(id);
    check_admissible(C);
    eigenvector.emplace(id, dominant_left_eigenvector(C));
  }

  Trajectory traj;
  traj.schedule_description = schedule.description();
  traj.seed = schedule.seed();
  traj.records.reserve(num_issues + 1);

  SimplexVector x = x1;
  for (int s = 1; s <= num_issues; ++s) {
    const std::string id = schedule.id_at(s);
    if (id.empty()) {
      throw PreconditionError("schedule sequence exhausted at issue " + std::to_string(s));
    }
    traj.records.push_back({s, id, x});
    x = friedkin_map(x, eigenvector.at(id));
  }
  traj.records.push_back({num_issues + 1, std::string{}, std::move(x)});
  return traj;
}

SimplexMap composed_cycle_map(const Schedule& schedule, int start_phase) {
  if (schedule.kind() == ScheduleKind::Arbitrary) {
    throw PreconditionError("composed cycle maps need a constant or periodic schedule");
  }
  const int period = schedule.period();
  if (start_phase < 1 || start_phase > period) {
    throw PreconditionError("start phase " + std::to_string(start_phase) +
                            " outside [1, " + std::to_string(period) + "]");
  }
  auto eigenvectors = std::make_shared<std::vector<SimplexVector>>();
  eigenvectors->reserve(period);
  for (const auto& id : schedule.cycle_ids()) {
    const InteractionMatrix& C = schedule.catalog().at(id);
    check_admissible(C);
    eigenvectors->push_back(dominant_left_eigenvector(C));
  }
  const int offset = start_phase - 1;
  return [eigenvectors, period, offset](const SimplexVector& x) {
    SimplexVector out = x;
    for (int k = 0; k < period; ++k) {
      out = friedkin_map(out, (*eigenvectors)[(offset + k) % period]);
    }
    return out;
  };
}

StackedState lift(std::span<const SimplexVector> segment) {
  if (segment.empty()) throw PreconditionError("lift needs a non-empty segment");
  StackedState y;
  y.blocks.assign(segment.begin(), segment.end());
  return y;
}

std::vector<SimplexVector> unlift(const StackedState& y) {
  if (y.blocks.empty()) throw PreconditionError("unlift needs a non-empty stacked state");
  return y.blocks;
}

int orbit_detection_burn_in(int period) { return std::max(50, 10 * period); }

OrbitReport find_fixed_point(const SimplexMap& map, const SimplexVector& x0, double tol,
                             int max_iter) {
  if (x0.is_vertex()) {
    throw PreconditionError("fixed-point search must not start at a vertex "
                            "(vertices are trivially fixed)");
  }
  if (!(tol > 0.0) || max_iter < 1) throw PreconditionError("need tol > 0 and max_iter >= 1");

  OrbitReport report;
  SimplexVector x = x0;
  double step = std::numeric_limits<double>::infinity();
  int applications = 0;
  while (applications < max_iter) {
    SimplexVector next = map(x);
    ++applications;
    step = linf_distance(next, x);
    x = std::move(next);
    if (step <= tol) {
      // Accept only if the residual at the candidate itself is within tol.
      SimplexVector probe = map(x);
      ++applications;
      const double residual = linf_distance(probe, x);
      if (residual <= tol) {
        report.converged = true;
        report.residual = residual;
        report.iterations = applications;
        report.orbit = {std::move(x)};
        return report;
      }
      step = residual;
      x = std::move(probe);
    }
  }
  report.converged = false;
  report.residual = step;
  report.iterations = applications;
  report.orbit = {std::move(x)};
  return report;
}

OrbitReport detect_periodic_orbit(const Trajectory& traj, int period, double tol) {
  if (period < 1) throw PreconditionError("period must be positive");
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  const int length = traj.issues();
  const int burn_in = orbit_detection_burn_in(period);
  if (length < burn_in + 2 * period) {
    throw PreconditionError("trajectory too short for orbit detection: have " +
                            std::to_string(length) + " issues, need at least " +
                            std::to_string(burn_in + 2 * period));
  }

  const int available = length - burn_in;
  const int full_periods = std::min(10, (available - period) / period);
  const int window_first = length - (full_periods + 1) * period + 1;

  double residual = 0.0;
  for (int s = window_first; s + period <= length; ++s) {
    residual = std::max(residual, linf_distance(traj.state_at(s + period), traj.state_at(s)));
  }

  // Average the last full_periods periods by phase; phase of issue s is
  // ((s - 1) mod period) + 1.
  const int n = traj.state_at(1).size();
  std::vector<Eigen::VectorXd> sums(period, Eigen::VectorXd::Zero(n));
  std::vector<int> counts(period, 0);
  for (int s = length - full_periods * period + 1; s <= length; ++s) {
    const int phase = (s - 1) % period;
    sums[phase] += traj.state_at(s).values();
    counts[phase] += 1;
  }

  OrbitReport report;
  report.orbit.reserve(period);
  for (int p = 0; p < period; ++p) {
    Eigen::VectorXd avg = sums[p] / counts[p];
    report.orbit.emplace_back(avg / avg.sum());
  }
  report.residual = residual;
  report.converged = residual <= tol;
  report.iterations = length;
  return report;
}

std::vector<SimplexVector> orbit_phase_points(const Schedule& schedule, int phase,
                                              const SimplexVector& y_star) {
  if (schedule.kind() == ScheduleKind::Arbitrary) {
    throw PreconditionError("orbit phase points need a constant or periodic schedule");
  }
  const int period = schedule.period();
  if (phase < 1 || phase > period) throw PreconditionError("phase out of range");

  std::vector<SimplexMap> maps;
  maps.reserve(period);
  for (const auto& id : schedule.cycle_ids()) {
    maps.push_back(single_issue_map(schedule.catalog().at(id)));
  }

  std::vector<std::optional<SimplexVector>> points(period);
  points[phase - 1] = y_star;
  int at = phase - 1;
  for (int k = 0; k < period - 1; ++k) {
    const int next = (at + 1) % period;
    points[next] = maps[at](*points[at]);
    at = next;
  }
  std::vector<SimplexVector> out;
  out.reserve(period);
  for (auto& p : points) out.push_back(std::move(*p));
  return out;
}

InvariantSetCheck verify_invariant_set(const SimplexMap& map, int n, double r, int num_samples,
                                       std::uint64_t seed) {
  if (n < 2) throw PreconditionError("n must be at least 2");
  if (!(r > 0.0) || r > 1.0 - 1.0 / n + 1e-15) {
    throw PreconditionError("invariant-set radius must satisfy 0 < r <= 1 - 1/n");
  }
  if (num_samples < 0) throw PreconditionError("num_samples must be nonnegative");
  const double cap = 1.0 - r;
  Rng rng(seed);

  std::vector<Eigen::VectorXd> points;
  points.reserve(static_cast<std::size_t>(n) * (n - 1) + num_samples);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v(i) = cap;
      v(j) = r;
      points.push_back(std::move(v));
    }
  }
  for (int k = 0; k < num_samples; ++k) {
    if (k % 2 == 0) {
      bool found = false;
      for (int attempt = 0; attempt < 64; ++attempt) {
        Eigen::VectorXd v = rng.simplex_point(n);
        if (v.maxCoeff() <= cap) {
          points.push_back(std::move(v));
          found = true;
          break;
        }
      }
      if (found) continue;
    }
    points.push_back(combination_of_extremes(rng, n, r));
  }

  InvariantSetCheck result;
  result.holds = true;
  for (const auto& p : points) {
    const SimplexVector input(p);
    const SimplexVector image = map(input);
    const double top = image.values().maxCoeff();
    result.worst_component = std::max(result.worst_component, top);
    if (top > cap) {
      result.holds = false;
      result.counterexample = input;
      return result;
    }
  }
  return result;
}

bool verify_cross_fixed_point_relation(const SimplexVector& y1_star, const SimplexMap& f1,
                                       const SimplexMap& f2, double tol) {
  const SimplexVector companion = f1(y1_star);
  const bool companion_fixed = linf_distance(f1(f2(companion)), companion) <= tol;
  const bool returns = linf_distance(f2(companion), y1_star) <= tol;
  return companion_fixed && returns;
}

}  // namespace dgf
