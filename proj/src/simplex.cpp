#include "dgf/simplex.hpp"

#include <cmath>
#include <string>

#include "dgf/errors.hpp"

namespace dgf {

SimplexVector::SimplexVector(Eigen::VectorXd values) : values_(std::move(values)) {
  const int n = static_cast<int>(values_.size());
  if (n < 1) throw StructuralError("simplex vector must be non-empty");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = values_(i);
    if (!std::isfinite(v)) throw StructuralError("simplex vector has a non-finite component");
    if (v < 0.0) {
      throw StructuralError("simplex vector has a negative component: " + std::to_string(v));
    }
    values_(i) = v + 0.0;  // canonicalize -0.0
    sum += values_(i);
  }
  if (std::abs(sum - 1.0) > kSimplexSumTol) {
    throw StructuralError("simplex vector components sum to " + std::to_string(sum) +
                          ", expected 1 within 1e-12");
  }

  // Vertex takes precedence: a state within kVertexTol of e_i is handled by
  // the exact vertex branch of the dynamics even if all components are
  // strictly positive.
  for (int i = 0; i < n; ++i) {
    if (values_(i) >= 1.0 - kVertexTol) {
      bool others_small = true;
      for (int j = 0; j < n; ++j) {
        if (j != i && values_(j) > kVertexTol) {
          others_small = false;
          break;
        }
      }
      if (others_small) {
        class_ = SimplexClass::Vertex;
        vertex_index_ = i;
        return;
      }
    }
  }
  class_ = values_.minCoeff() > 0.0 ? SimplexClass::Interior : SimplexClass::Boundary;
}

SimplexVector SimplexVector::vertex(int n, int i) {
  if (n < 1 || i < 0 || i >= n) throw PreconditionError("vertex index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(i) = 1.0;
  return SimplexVector(std::move(v));
}

SimplexVector SimplexVector::uniform(int n) {
  if (n < 1) throw PreconditionError("dimension must be positive");
  return SimplexVector(Eigen::VectorXd::Constant(n, 1.0 / n));
}

std::optional<int> SimplexVector::vertex_index() const {
  if (class_ != SimplexClass::Vertex) return std::nullopt;
  return vertex_index_;
}

double linf_distance(const SimplexVector& a, const SimplexVector& b) {
  if (a.size() != b.size()) throw PreconditionError("dimension mismatch");
  return (a.values() - b.values()).lpNorm<Eigen::Infinity>();
}

}  // namespace dgf
