#include "dgf/interaction_matrix.hpp"

#include <cmath>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "dgf/errors.hpp"
#include "dgf/rng.hpp"

namespace dgf {

namespace {

constexpr double kStationaryResidualTol = 1e-12;
constexpr double kPowerStepTol = 1e-14;
constexpr int kPowerIterationCap = 100000;
constexpr int kGenerationAttempts = 1000;

void check_entries(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw StructuralError("matrix must be square with n >= 1, got " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()));
  }
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v)) {
        throw StructuralError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is not finite");
      }
      if (v < 0.0) {
        throw StructuralError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is negative");
      }
    }
  }
}

bool rows_stochastic(const Eigen::MatrixXd& m) {
  for (int i = 0; i < m.rows(); ++i) {
    if (std::abs(m.row(i).sum() - 1.0) > kStochasticTol) return false;
  }
  return true;
}

bool cols_stochastic(const Eigen::MatrixXd& m) {
  for (int j = 0; j < m.cols(); ++j) {
    if (std::abs(m.col(j).sum() - 1.0) > kStochasticTol) return false;
  }
  return true;
}

bool diagonal_zero(const Eigen::MatrixXd& m) {
  for (int i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 0.0) return false;
  }
  return true;
}

double stationary_residual(const Eigen::MatrixXd& m, const Eigen::VectorXd& v) {
  return (m.transpose() * v - v).lpNorm<Eigen::Infinity>();
}

// Clamp numerical dust below zero and renormalize to unit sum.
Eigen::VectorXd clean_distribution(Eigen::VectorXd v) {
  for (int i = 0; i < v.size(); ++i) {
    if (v(i) < 0.0) {
      if (v(i) < -1e-10) {
        throw NumericalError("stationary vector has a significantly negative component: " +
                             std::to_string(v(i)));
      }
      v(i) = 0.0;
    }
  }
  const double sum = v.sum();
  if (sum <= 0.0) throw NumericalError("stationary vector collapsed to zero");
  return v / sum;
}

Eigen::MatrixXd random_general_matrix(Rng& rng, int n, double density) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && rng.uniform() < density) m(i, j) = rng.uniform(0.05, 1.0);
    }
  }
  for (int i = 0; i < n; ++i) {
    double sum = m.row(i).sum();
    if (sum <= 0.0) {
      int j = static_cast<int>(rng.integer(n - 1));
      if (j >= i) ++j;
      m(i, j) = rng.uniform(0.05, 1.0);
      sum = m(i, j);
    }
    m.row(i) /= sum;
  }
  return m;
}

Eigen::MatrixXd random_doubly_stochastic_matrix(Rng& rng, int n, double density) {
  int k = static_cast<int>(std::lround(density * (n - 1)));
  if (k < 2) k = 2;
  std::vector<double> weights(k);
  double sum = 0.0;
  for (double& w : weights) {
    w = rng.uniform(0.2, 1.0);
    sum += w;
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int l = 0; l < k; ++l) {
    const std::vector<int> p = rng.derangement(n);
    const double w = weights[l] / sum;
    for (int i = 0; i < n; ++i) m(i, p[i]) += w;
  }
  return m;
}

}  // namespace

InteractionMatrix::InteractionMatrix(Eigen::MatrixXd entries, std::string id)
    : entries_(std::move(entries)), id_(std::move(id)) {
  check_entries(entries_);
  if (!diagonal_zero(entries_)) {
    throw StructuralError("relative interaction matrix must have an exactly zero diagonal");
  }
  if (!rows_stochastic(entries_)) {
    throw StructuralError("relative interaction matrix rows must sum to 1 within 1e-12");
  }
}

InteractionMatrix InteractionMatrix::with_id(std::string id) const {
  return InteractionMatrix(entries_, std::move(id));
}

ValidationReport validate(const Eigen::MatrixXd& raw) {
  check_entries(raw);
  ValidationReport report;
  report.n = static_cast<int>(raw.rows());
  report.row_stochastic = rows_stochastic(raw);
  report.zero_diagonal = diagonal_zero(raw);
  report.doubly_stochastic = report.row_stochastic && cols_stochastic(raw);
  report.irreducible = detail::pattern_strongly_connected(raw);
  report.star_topology = detail::pattern_has_star(raw);
  report.satisfies_assumption_1 = report.row_stochastic && report.zero_diagonal &&
                                  report.irreducible && !report.star_topology && report.n >= 3;
  return report;
}

bool is_irreducible(const InteractionMatrix& C) {
  return detail::pattern_strongly_connected(C.entries());
}

bool has_star_topology(const InteractionMatrix& C) {
  return detail::pattern_has_star(C.entries());
}

bool is_doubly_stochastic(const InteractionMatrix& C) { return cols_stochastic(C.entries()); }

SimplexVector dominant_left_eigenvector(const InteractionMatrix& C) {
  if (!is_irreducible(C)) {
    throw PreconditionError("dominant left eigenvector requires an irreducible matrix ('" +
                            C.id() + "' is reducible; the eigenvector is not unique)");
  }
  Eigen::VectorXd c = detail::stationary_distribution(C.entries());
  if (c.minCoeff() <= 0.0) {
    throw NumericalError("eigenvector of irreducible matrix must be strictly positive");
  }
  return SimplexVector(std::move(c));
}

InteractionMatrix random_interaction_matrix(int n, double density, std::uint64_t seed,
                                            bool doubly_stochastic) {
  if (n < 3) throw PreconditionError("dynamics require n >= 3");
  if (!(density > 0.0) || density > 1.0) throw PreconditionError("density must lie in (0, 1]");
  Rng rng(seed);
  const std::string id = std::string("rand-n") + std::to_string(n) + "-s" + std::to_string(seed) +
                         (doubly_stochastic ? "-ds" : "");
  for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
    Eigen::MatrixXd m = doubly_stochastic ? random_doubly_stochastic_matrix(rng, n, density)
                                          : random_general_matrix(rng, n, density);
    const ValidationReport report = validate(m);
    if (report.satisfies_assumption_1 && (!doubly_stochastic || report.doubly_stochastic)) {
      return InteractionMatrix(std::move(m), id);
    }
  }
  throw NumericalError("no admissible interaction matrix found after " +
                       std::to_string(kGenerationAttempts) + " attempts (n=" + std::to_string(n) +
                       ", density=" + std::to_string(density) + ")");
}

namespace detail {

namespace {

// BFS over the off-diagonal sparsity pattern, optionally on the transpose.
std::vector<bool> reachable_from_zero(const Eigen::MatrixXd& m, bool transpose) {
  const int n = static_cast<int>(m.rows());
  std::vector<bool> seen(n, false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < n; ++v) {
      if (v == u || seen[v]) continue;
      const double w = transpose ? m(v, u) : m(u, v);
      if (w > kStructuralZero) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

bool pattern_strongly_connected(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 1) return true;
  for (const bool b : reachable_from_zero(m, false)) {
    if (!b) return false;
  }
  for (const bool b : reachable_from_zero(m, true)) {
    if (!b) return false;
  }
  return true;
}

bool pattern_has_star(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && m(i, j) > kStructuralZero) edges.emplace_back(i, j);
    }
  }
  // A graph with no edges is vacuously a star; such matrices cannot be
  // row-stochastic anyway.
  for (int center = 0; center < n; ++center) {
    bool all_touch = true;
    for (const auto& [i, j] : edges) {
      if (i != center && j != center) {
        all_touch = false;
        break;
      }
    }
    if (all_touch) return true;
  }
  return false;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  const Eigen::MatrixXd Pt = P.transpose();

  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / n);
  for (int iter = 0; iter < kPowerIterationCap; ++iter) {
    Eigen::VectorXd next = Pt * v;
    const double sum = next.sum();
    if (sum <= 0.0) break;
    next /= sum;
    const double step = (next - v).lpNorm<Eigen::Infinity>();
    v = std::move(next);
    if (step <= kPowerStepTol) {
      if (stationary_residual(P, v) <= kStationaryResidualTol) return clean_distribution(v);
      break;
    }
  }

  // Direct solve of the stationary system, replacing the (redundant) last
  // equation with the normalization constraint.
  Eigen::MatrixXd A = Pt - Eigen::MatrixXd::Identity(n, n);
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  Eigen::VectorXd w = clean_distribution(A.partialPivLu().solve(b));
  const double residual = stationary_residual(P, w);
  if (residual > kStationaryResidualTol) {
    throw NumericalError("stationary vector residual " + std::to_string(residual) +
                         " exceeds 1e-12 (matrix may not have a unique stationary vector)");
  }
  return w;
}

}  // namespace detail

}  // namespace dgf
