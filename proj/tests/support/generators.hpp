#pragma once

// Seeded random generators for property tests.

#include <algorithm>
#include <random>
#include <vector>

#include "simop/spectral_frame.hpp"

namespace simop::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return normal_(rng_); }
  Complex complex_normal() { return {normal(), normal()}; }

  /// Random eigenvalues in [-span, span], optionally with a few repeats.
  SpectralFrame frame(int n, double span = 10.0, bool repeats = false) {
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (double& v : ev) v = uniform(-span, span);
    if (repeats && n > 2) ev[1] = ev[0];
    return SpectralFrame::make(std::move(ev));
  }

  Matrix matrix(Eigen::Index n) {
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex_normal();
    }
    return m;
  }

  /// Random matrix rescaled to the given norm.
  Matrix matrix_with_norm(Eigen::Index n, double norm, NormKind kind = NormKind::spectral) {
    Matrix m = matrix(n);
    return m * (norm / operator_norm(m, kind));
  }

  Matrix strictly_lower(Eigen::Index n, double norm) {
    Matrix m = matrix(n).triangularView<Eigen::StrictlyLower>();
    return m * (norm / operator_norm(m, NormKind::spectral));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

inline SpectralFrame integer_frame(int lo, int hi) {
  return SpectralFrame::arithmetic(static_cast<double>(lo), 1.0, static_cast<std::size_t>(hi - lo + 1));
}

}  // namespace simop::testing
