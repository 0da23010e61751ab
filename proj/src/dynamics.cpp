#include "dgf/dynamics.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dgf/errors.hpp"

namespace dgf {

namespace {

void check_dims(int a, int b, const char* what) {
  if (a != b) {
    throw PreconditionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
  }
}

void check_dynamics_size(int n) {
  if (n < 3) throw PreconditionError("dynamics require n >= 3, got n = " + std::to_string(n));
}

void check_assumption_1(const InteractionMatrix& C) {
  const ValidationReport report = validate(C.entries());
  if (!report.satisfies_assumption_1) {
    throw PreconditionError("matrix '" + C.id() +
                            "' is not admissible (needs irreducibility, no star topology, n >= 3)");
  }
}

}  // namespace

InfluenceMatrix::InfluenceMatrix(Eigen::MatrixXd entries, std::string source_id)
    : entries_(std::move(entries)), source_id_(std::move(source_id)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw StructuralError("influence matrix must be square");
  }
  for (int i = 0; i < entries_.rows(); ++i) {
    for (int j = 0; j < entries_.cols(); ++j) {
      const double v = entries_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw StructuralError("influence matrix entries must be finite and nonnegative");
      }
    }
    if (std::abs(entries_.row(i).sum() - 1.0) > kStochasticTol) {
      throw StructuralError("influence matrix rows must sum to 1 within 1e-12");
    }
  }
}

InfluenceMatrix build_influence_matrix(const SimplexVector& x, const InteractionMatrix& C) {
  return build_influence_matrix(x.values(), C);
}

InfluenceMatrix build_influence_matrix(const Eigen::VectorXd& x, const InteractionMatrix& C) {
  check_dims(static_cast<int>(x.size()), C.size(), "build_influence_matrix");
  check_dynamics_size(C.size());
  if (!x.isZero(0.0)) {
    SimplexVector membership(x);  // throws StructuralError when x is not in the simplex
    (void)membership;
  }
  const int n = C.size();
  Eigen::MatrixXd w = (Eigen::VectorXd::Ones(n) - x).asDiagonal() * C.entries();
  // C has an exactly zero diagonal, so the diagonal of W is exactly x.
  for (int i = 0; i < n; ++i) w(i, i) = x(i);
  return InfluenceMatrix(std::move(w), C.id());
}

OpinionVector degroot_step(const InfluenceMatrix& W, const OpinionVector& y) {
  check_dims(W.size(), static_cast<int>(y.size()), "degroot_step");
  return W.entries() * y;
}

ConsensusResult degroot_consensus(const InfluenceMatrix& W, const OpinionVector& y0, double tol,
                                  int max_steps) {
  check_dims(W.size(), static_cast<int>(y0.size()), "degroot_consensus");
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  ConsensusResult result;
  result.opinions = y0;
  for (int step = 0; step < max_steps; ++step) {
    OpinionVector next = W.entries() * result.opinions;
    const double diff = (next - result.opinions).lpNorm<Eigen::Infinity>();
    result.opinions = std::move(next);
    result.steps = step + 1;
    if (diff <= tol) {
      result.converged = true;
      return result;
    }
  }
  result.converged = false;
  return result;
}

double alpha(const SimplexVector& x, const SimplexVector& c) {
  check_dims(x.size(), c.size(), "alpha");
  check_dynamics_size(x.size());
  if (!c.is_interior()) {
    throw PreconditionError("eigenvector argument must be an interior simplex point");
  }
  double sum = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] >= 1.0 - kVertexTol) {
      throw NumericalError("alpha is singular: component " + std::to_string(i) +
                           " is within the vertex tolerance of 1");
    }
    sum += c[i] / (1.0 - x[i]);
  }
  return 1.0 / sum;
}

SimplexVector friedkin_map(const SimplexVector& x, const SimplexVector& c) {
  check_dims(x.size(), c.size(), "friedkin_map");
  check_dynamics_size(x.size());
  if (!c.is_interior()) {
    throw PreconditionError("eigenvector argument must be an interior simplex point");
  }
  if (x.is_vertex()) return SimplexVector::vertex(x.size(), *x.vertex_index());

  // Not a vertex, so every component is below 1 - kVertexTol and the
  // denominators are bounded away from zero.
  const int n = x.size();
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = c[i] / (1.0 - x[i]);
  w /= w.sum();  // folds in alpha and cancels accumulated drift
  return SimplexVector(std::move(w));
}

SimplexVector issue_update_via_eigenvector(const SimplexVector& x, const InteractionMatrix& C) {
  check_dims(x.size(), C.size(), "issue_update_via_eigenvector");
  check_assumption_1(C);
  const InfluenceMatrix W = build_influence_matrix(x, C);
  try {
    return SimplexVector(detail::stationary_distribution(W.entries()));
  } catch (const NumericalError& err) {
    throw NumericalError(std::string("self-weight eigenvector update failed: ") + err.what());
  }
}

}  // namespace dgf
