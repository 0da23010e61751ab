#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "dgf/simplex.hpp"

namespace dgf {

/// Tolerance on row/column sums for (doubly) stochastic checks.
inline constexpr double kStochasticTol = 1e-12;

/// Entries at or below this magnitude are structural zeros for graph
/// connectivity purposes; separates numerical dust from genuine edges.
inline constexpr double kStructuralZero = 1e-15;

/// Structural facts about a square nonnegative matrix, phrased against the
/// requirements of the self-weight dynamics: row-stochastic, zero diagonal,
/// irreducible (strongly connected interaction graph), not a star topology,
/// and n >= 3.
struct ValidationReport {
  int n = 0;
  bool row_stochastic = false;
  bool zero_diagonal = false;
  bool irreducible = false;
  bool doubly_stochastic = false;
  bool star_topology = false;
  bool satisfies_assumption_1 = false;
};

/// A relative interaction matrix: nonnegative entries, zero diagonal, rows
/// summing to 1 within kStochasticTol. Entry (i, j) is the weight individual
/// i accords the opinion of individual j. Immutable after construction.
class InteractionMatrix {
 public:
  /// Throws StructuralError unless the matrix is square, nonnegative and
  /// finite, has an exactly zero diagonal, and is row-stochastic.
  InteractionMatrix(Eigen::MatrixXd entries, std::string id);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const std::string& id() const { return id_; }

  /// Copy of this matrix under a different catalog id.
  InteractionMatrix with_id(std::string id) const;

 private:
  Eigen::MatrixXd entries_;
  std::string id_;
};

/// Computes every structural flag for a raw square array. Throws
/// StructuralError for non-square input or NaN/negative entries.
ValidationReport validate(const Eigen::MatrixXd& raw);

/// True iff the directed graph of the nonzero off-diagonal pattern is
/// strongly connected.
bool is_irreducible(const InteractionMatrix& C);

/// True iff some node touches every edge of the interaction graph.
bool has_star_topology(const InteractionMatrix& C);

/// True iff every column also sums to 1 within kStochasticTol.
bool is_doubly_stochastic(const InteractionMatrix& C);

/// The unique normalized left eigenvector for eigenvalue 1 of an irreducible
/// row-stochastic matrix: c with c^T C = c^T, c > 0, sum(c) = 1, residual
/// ||c^T C - c^T||_inf <= 1e-12. Throws PreconditionError when C is not
/// irreducible (the eigenvector is not unique there).
SimplexVector dominant_left_eigenvector(const InteractionMatrix& C);

/// Seeded generator of matrices satisfying the structural requirements of
/// the dynamics (irreducible, non-star, n >= 3). `density` is the expected
/// fraction of off-diagonal entries that are nonzero. With
/// `doubly_stochastic` set, the result is a convex combination of
/// zero-diagonal permutation matrices and has unit column sums as well.
/// Deterministic per seed; throws NumericalError if no admissible matrix is
/// found within a bounded number of attempts.
InteractionMatrix random_interaction_matrix(int n, double density, std::uint64_t seed,
                                            bool doubly_stochastic);

namespace detail {

/// Stationary row vector of a row-stochastic matrix: power iteration on the
/// transpose (step tolerance 1e-14, cap 100000 iterations), falling back to
/// a direct linear solve of the stationary system when the iteration cap is
/// hit or the residual stays above 1e-12. The fallback handles matrices
/// whose eigenvalue 1 is not strictly dominant in modulus (e.g. permutation
/// patterns). Result is nonnegative, sums to 1, residual <= 1e-12.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& row_stochastic);

bool pattern_strongly_connected(const Eigen::MatrixXd& m);
bool pattern_has_star(const Eigen::MatrixXd& m);

}  // namespace detail

}  // namespace dgf
