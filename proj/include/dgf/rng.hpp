#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace dgf {

/// Deterministic random source. All draws go through explicit helpers so a
/// given seed reproduces the same stream regardless of standard-library
/// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t integer(std::uint64_t bound);

  /// Uniformly distributed point of the n-simplex (normalized exponentials).
  Eigen::VectorXd simplex_point(int n);

  /// Simplex point with every component strictly positive and the largest
  /// component at most 1 - vertex_margin.
  Eigen::VectorXd interior_simplex_point(int n, double vertex_margin = 1e-6);

  /// Random permutation of {0..n-1} with no fixed point, n >= 2.
  std::vector<int> derangement(int n);

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Mixes a base seed and a stream index into an independent child seed
/// (splitmix64 finalizer).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace dgf
