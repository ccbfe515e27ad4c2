#pragma once

// First-order operator -i d/dt - v(t) with an omega-periodic scalar potential, in the
// Fourier basis e_n = exp(2 pi i n t / omega). A = diag(2 pi n / omega) and multiplication
// by v becomes the Laurent matrix B_nm = v^_{n-m}, truncated to |n|, |m| <= M.

#include <vector>

#include "simop/similarity.hpp"

namespace simop {

class FourierPotential {
 public:
  /// coefficients[k] is v^_{k-N} for k = 0..2N, so the list must have odd length.
  /// Throws DomainError on a non-positive period, an even-length list or non-finite values.
  FourierPotential(double period, std::vector<Complex> coefficients);

  double period() const noexcept { return period_; }
  int order() const noexcept { return order_; }  // N
  Complex coefficient(int n) const;             // 0 outside [-N, N]
  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }

  /// max |v(t)| over 256 (2N+1) uniform samples of one period.
  double sup_norm_estimate() const noexcept { return sup_norm_; }
  /// sum |v^_n|; bounds the sup norm and the multiplication-operator norm.
  double coefficient_l1_norm() const noexcept;

  /// Frequency 2 pi n / omega.
  double frequency(int n) const noexcept;

 private:
  double period_;
  int order_;
  std::vector<Complex> coefficients_;
  double sup_norm_ = 0.0;
};

struct LaurentProblem {
  SpectralFrame frame;
  OperatorMatrix B;
  int truncation;
};

/// Frame 2 pi n / omega for |n| <= M and B_nm = v^_{n-m}. Throws DomainError when M < N.
LaurentProblem build_laurent(const FourierPotential& v, int truncation);

/// Theorem-level regime in which the reduced potential is a constant:
/// a <= pi/omega and 5.4 sqrt(3) (omega/pi) sup|v| < 1.
bool constant_reduction_regime(const FourierPotential& v, double a);

struct PeriodicReduction {
  Complex c;                           // v0 coefficient at n = 0
  bool constant_regime = false;
  std::vector<Complex> x_star;         // fixed point coefficients, n = -M..M
  std::vector<Complex> v0;             // J x*, n = -M..M
  int coefficient_iterations = 0;
  double cross_check_error = 0.0;      // interior JX*, X* mismatch relative to sum |v^_n|
  int truncation = 0;
  SimilarityReport report;             // Laurent-matrix run
};

/// Runs the engine on the Laurent matrix, then the same variant on coefficient sequences
/// (products as truncated convolutions, J and Gamma as pointwise multipliers). The two
/// paths must agree on the interior window |n|, |m| <= M/2 within 1e-9, else VerificationError.
PeriodicReduction reduce_periodic(const FourierPotential& v, const IterationConfig& config, int truncation);

/// For v^ supported on n > 0 (or n < 0): series reduction on the Laurent matrix with
/// a = pi n_min / omega. Asserts the exact frame spectrum and a residual below
/// 1e-12 (1 + ||A - B||). Two-sided support throws StructuralError.
SimilarityReport reduce_hypercausal_potential(const FourierPotential& v, int truncation,
                                              const IterationConfig& base = {});

/// max over |n| <= M/2 of the distance from 2 pi n/omega - c to the nearest eigenvalue of A - B.
double interior_spectrum_error(const FourierPotential& v, const SimilarityReport& report, Complex c,
                               int truncation);

}  // namespace simop
