#pragma once

// Test-side reference implementations, deliberately independent of the
// library's computation paths: transitive-closure reachability instead of
// BFS, definition-level star scan, long-double Gaussian elimination instead
// of power iteration / LU, and a direct long-double transcription of the
// self-weight update map.

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "dgf/rng.hpp"

namespace oracle {

inline bool strongly_connected(const Eigen::MatrixXd& m, double threshold = 1e-15) {
  const int n = static_cast<int>(m.rows());
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      reach[i][j] = (i == j) || (i != j && m(i, j) > threshold);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!reach[i][j]) return false;
    }
  }
  return true;
}

inline bool star_topology(const Eigen::MatrixXd& m, double threshold = 1e-15) {
  const int n = static_cast<int>(m.rows());
  for (int center = 0; center < n; ++center) {
    bool every_edge_touches = true;
    for (int j = 0; j < n && every_edge_touches; ++j) {
      for (int k = 0; k < n && every_edge_touches; ++k) {
        if (j != k && m(j, k) > threshold && j != center && k != center) {
          every_edge_touches = false;
        }
      }
    }
    if (every_edge_touches) return true;
  }
  return false;
}

// Stationary row vector by Gaussian elimination with partial pivoting in
// long double: n-1 stationarity equations plus sum(w) = 1.
inline std::vector<double> stationary(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1, 0.0L));
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n; ++j) {
      a[i][j] = static_cast<long double>(P(j, i)) - (i == j ? 1.0L : 0.0L);
    }
    a[i][n] = 0.0L;
  }
  for (int j = 0; j < n; ++j) a[n - 1][j] = 1.0L;
  a[n - 1][n] = 1.0L;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::fabs(static_cast<double>(a[row][col])) >
          std::fabs(static_cast<double>(a[pivot][col]))) {
        pivot = row;
      }
    }
    std::swap(a[pivot], a[col]);
    for (int row = col + 1; row < n; ++row) {
      const long double factor = a[row][col] / a[col][col];
      for (int j = col; j <= n; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  std::vector<long double> w(n, 0.0L);
  for (int row = n - 1; row >= 0; --row) {
    long double s = a[row][n];
    for (int j = row + 1; j < n; ++j) s -= a[row][j] * w[j];
    w[row] = s / a[row][row];
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = static_cast<double>(w[i]);
  return out;
}

// Direct long-double transcription of the self-weight update map, including
// the vertex branch.
inline std::vector<double> friedkin(const std::vector<double>& x, const std::vector<double>& c) {
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    if (x[i] >= 1.0 - 1e-9) {
      std::vector<double> vertex(n, 0.0);
      vertex[i] = 1.0;
      return vertex;
    }
  }
  std::vector<long double> w(n);
  long double sum = 0.0L;
  for (int i = 0; i < n; ++i) {
    w[i] = static_cast<long double>(c[i]) / (1.0L - static_cast<long double>(x[i]));
    sum += w[i];
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = static_cast<double>(w[i] / sum);
  return out;
}

// Random row-stochastic zero-diagonal matrix for agreement tests. The
// generator need not be independent of the library; only the checkers are.
inline Eigen::MatrixXd random_pattern(dgf::Rng& rng, int n, double density) {
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
      m(i, j) = 1.0;
      sum = 1.0;
    }
    m.row(i) /= sum;
  }
  return m;
}

}  // namespace oracle
