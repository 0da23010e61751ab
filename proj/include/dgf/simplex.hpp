#pragma once

#include <optional>

#include <Eigen/Core>

namespace dgf {

/// Tolerance on |sum - 1| for simplex membership.
inline constexpr double kSimplexSumTol = 1e-12;

/// A state x is treated as the vertex e_i when x_i >= 1 - kVertexTol and
/// every other component is at most kVertexTol. The self-weight map is
/// singular as x_i -> 1, so states this close to a vertex take the exact
/// vertex branch.
inline constexpr double kVertexTol = 1e-9;

enum class SimplexClass { Vertex, Boundary, Interior };

/// A point of the n-simplex: componentwise nonnegative, entries summing to 1
/// within kSimplexSumTol. Classified on construction as a vertex e_i, an
/// interior point (all components strictly positive), or a boundary point.
class SimplexVector {
 public:
  /// Validates membership; throws StructuralError on violation.
  explicit SimplexVector(Eigen::VectorXd values);

  /// The exact canonical basis vector e_i (0-based index).
  static SimplexVector vertex(int n, int i);

  /// The democratic configuration (1/n, ..., 1/n).
  static SimplexVector uniform(int n);

  const Eigen::VectorXd& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_(i); }

  SimplexClass classification() const { return class_; }
  bool is_vertex() const { return class_ == SimplexClass::Vertex; }
  bool is_interior() const { return class_ == SimplexClass::Interior; }

  /// Index i of the vertex e_i; empty unless classified as a vertex.
  std::optional<int> vertex_index() const;

 private:
  Eigen::VectorXd values_;
  SimplexClass class_ = SimplexClass::Boundary;
  int vertex_index_ = -1;
};

/// L-infinity distance between two states of equal dimension.
double linf_distance(const SimplexVector& a, const SimplexVector& b);

}  // namespace dgf
