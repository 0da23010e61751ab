#pragma once

#include <string>

#include <Eigen/Core>

#include "dgf/interaction_matrix.hpp"
#include "dgf/simplex.hpp"

namespace dgf {

/// Opinion states carry no simplex constraint, only finiteness.
using OpinionVector = Eigen::VectorXd;

/// The within-issue influence matrix W = diag(x) + (I - diag(x)) C.
/// Row-stochastic; the diagonal holds the self-weights x exactly.
class InfluenceMatrix {
 public:
  /// Raw constructor for tests and direct use; requires row stochasticity
  /// within kStochasticTol.
  explicit InfluenceMatrix(Eigen::MatrixXd entries, std::string source_id = {});

  int size() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  /// Id of the interaction matrix this was built from, when known.
  const std::string& source_id() const { return source_id_; }

 private:
  Eigen::MatrixXd entries_;
  std::string source_id_;
};

/// W = diag(x) + (I - diag(x)) C for x in the simplex.
InfluenceMatrix build_influence_matrix(const SimplexVector& x, const InteractionMatrix& C);

/// Overload accepting the all-zero x as a degenerate construction
/// convenience (W = C); any other x must lie in the simplex. Dynamics entry
/// points always go through the SimplexVector overload.
InfluenceMatrix build_influence_matrix(const Eigen::VectorXd& x, const InteractionMatrix& C);

/// One opinion update: y <- W y.
OpinionVector degroot_step(const InfluenceMatrix& W, const OpinionVector& y);

struct ConsensusResult {
  OpinionVector opinions;
  bool converged = false;
  int steps = 0;
};

/// Iterates the opinion update until ||y(t+1) - y(t)||_inf <= tol or
/// max_steps is hit. Non-convergence is reported in the result, not thrown.
/// With W built from an irreducible C and interior x, the limit is the
/// consensus value w^T y0 where w is W's dominant left eigenvector.
ConsensusResult degroot_consensus(const InfluenceMatrix& W, const OpinionVector& y0,
                                  double tol = 1e-12, int max_steps = 1000000);

/// Normalization constant 1 / sum_i c_i / (1 - x_i) of the self-weight
/// update map; strictly positive away from the vertices. Throws
/// NumericalError when some x_i >= 1 - kVertexTol (singular there).
double alpha(const SimplexVector& x, const SimplexVector& c);

/// The self-weight update map F: vertices are returned exactly; otherwise
/// component i is proportional to c_i / (1 - x_i), normalized onto the
/// simplex. c must be the dominant left eigenvector of an admissible
/// interaction matrix (interior point).
SimplexVector friedkin_map(const SimplexVector& x, const SimplexVector& c);

/// The same issue-to-issue update computed along the defining route: build
/// W(x, C) and return its dominant left eigenvector. Agrees with
/// friedkin_map(x, dominant_left_eigenvector(C)) away from the vertices.
SimplexVector issue_update_via_eigenvector(const SimplexVector& x, const InteractionMatrix& C);

}  // namespace dgf
