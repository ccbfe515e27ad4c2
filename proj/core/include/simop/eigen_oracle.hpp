#pragma once

#include <complex>
#include <vector>

#include "simop/spectral_frame.hpp"

namespace simop {

struct SpectrumResult {
  std::vector<Complex> eigenvalues;
  /// max_k ||X v_k - mu_k v_k|| over unit eigenvectors.
  double backward_error = 0.0;
};

/// All eigenvalues of a dense complex matrix (Hessenberg reduction and shifted QR).
/// Triangular input returns its diagonal exactly. Throws OracleFailure when the QR
/// iteration fails or the backward error reaches 1e-10 (1 + ||X||).
SpectrumResult dense_spectrum(const Matrix& x);
SpectrumResult dense_spectrum(const OperatorMatrix& x);

/// Max pairwise distance after sorting both lists by (re, im) rounded to 1e-9.
/// Above 1e-6 a greedy nearest-neighbour pairing is also tried and the smaller
/// result returned. Throws DomainError on length mismatch.
double match_spectra(const std::vector<Complex>& s1, const std::vector<Complex>& s2);

}  // namespace simop
