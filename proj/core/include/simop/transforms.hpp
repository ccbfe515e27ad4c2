#pragma once

// Entrywise (Schur) multipliers realizing J and Gamma on a spectral frame:
//   (JX)_ij     = tau(lambda_i - lambda_j) X_ij
//   (GammaX)_ij = omega(lambda_i - lambda_j) X_ij

#include <string_view>
#include <vector>

#include "simop/kernels.hpp"
#include "simop/spectral_frame.hpp"

namespace simop {

enum class TransformRole { J, Gamma };

/// Matrix of multiplier values m(lambda_i - lambda_j), m = tau for J and omega for Gamma.
/// When every nonzero difference has modulus >= 2a (so tau vanishes off the clusters of
/// equal eigenvalues), the values are taken in closed form: 1 / 0 for J, and
/// 1/(lambda_i - lambda_j) / 0 for Gamma.
Matrix multiplier_weights(const SpectralFrame& frame, const MultiplierPair& pair, TransformRole role);

OperatorMatrix apply_toeplitz_multiplier(const SpectralFrame& frame, const MultiplierPair& pair,
                                         TransformRole role, const OperatorMatrix& x);

/// Precomputed weights for repeated application inside the iterations.
class SchurTransforms {
 public:
  SchurTransforms(const SpectralFrame& frame, const MultiplierPair& pair);

  Matrix J(const Matrix& x) const { return j_weights_.cwiseProduct(x); }
  Matrix Gamma(const Matrix& x) const { return gamma_weights_.cwiseProduct(x); }

  const Matrix& j_weights() const noexcept { return j_weights_; }
  const Matrix& gamma_weights() const noexcept { return gamma_weights_; }
  const MultiplierPair& pair() const noexcept { return pair_; }

 private:
  MultiplierPair pair_;
  Matrix j_weights_;
  Matrix gamma_weights_;
};

/// True when tau is 0 or 1 on every difference of the frame, so J(JX) = JX.
bool transform_is_idempotent(const SpectralFrame& frame, const MultiplierPair& pair);

/// True when J keeps exactly the entries with lambda_i = lambda_j (a pinching, norm 1).
bool transform_is_diagonal_extraction(const SpectralFrame& frame, const MultiplierPair& pair);

/// True when 1 - tau(l) = l omega(l) holds on every difference of the frame.
bool homological_identity_exact(const SpectralFrame& frame, const MultiplierPair& pair);

/// ||A(GammaX) - (GammaX)A - X + JX|| with A = diag(frame).
double homological_residual(const SpectralFrame& frame, const MultiplierPair& pair, const OperatorMatrix& x,
                            NormKind norm = NormKind::spectral);

enum class SupportClass { zero, memoryless, causal, anticausal, hypercausal, hyperanticausal, mixed };

std::string_view to_string(SupportClass cls);

struct SupportSet {
  std::vector<double> offsets;  // sorted, distinct
  SupportClass cls = SupportClass::zero;

  double min_offset() const { return offsets.empty() ? 0.0 : offsets.front(); }
  double max_offset() const { return offsets.empty() ? 0.0 : offsets.back(); }
};

/// Differences lambda_i - lambda_j over entries with |X_ij| > tol * ||X||_F.
SupportSet beurling_support(const SpectralFrame& frame, const Matrix& x, double tol = 1e-12);
SupportSet beurling_support(const SpectralFrame& frame, const OperatorMatrix& x, double tol = 1e-12);

}  // namespace simop
