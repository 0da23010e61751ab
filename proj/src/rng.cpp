#include "dgf/rng.hpp"

#include <cmath>

#include "dgf/errors.hpp"

namespace dgf {

std::uint64_t Rng::integer(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("integer bound must be positive");
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = gen_();
  } while (r >= limit);
  return r % bound;
}

Eigen::VectorXd Rng::simplex_point(int n) {
  if (n < 1) throw PreconditionError("simplex dimension must be positive");
  Eigen::VectorXd v(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    v(i) = -std::log(1.0 - uniform());
    sum += v(i);
  }
  if (sum <= 0.0) {
    // All exponentials zero is astronomically unlikely; fall back to uniform.
    return Eigen::VectorXd::Constant(n, 1.0 / n);
  }
  return v / sum;
}

Eigen::VectorXd Rng::interior_simplex_point(int n, double vertex_margin) {
  for (;;) {
    Eigen::VectorXd v = simplex_point(n);
    if (v.minCoeff() > 0.0 && v.maxCoeff() <= 1.0 - vertex_margin) return v;
  }
}

std::vector<int> Rng::derangement(int n) {
  if (n < 2) throw PreconditionError("derangement requires n >= 2");
  std::vector<int> p(n);
  for (;;) {
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(integer(static_cast<std::uint64_t>(i) + 1));
      std::swap(p[i], p[j]);
    }
    bool fixed_point = false;
    for (int i = 0; i < n; ++i) {
      if (p[i] == i) {
        fixed_point = true;
        break;
      }
    }
    if (!fixed_point) return p;
  }
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace dgf
