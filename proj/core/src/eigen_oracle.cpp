#include "simop/eigen_oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "simop/errors.hpp"

namespace simop {
namespace {

bool is_upper_triangular(const Matrix& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < x.rows(); ++i) {
      if (x(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

std::vector<Complex> diagonal_of(const Matrix& x) {
  std::vector<Complex> d(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index k = 0; k < x.rows(); ++k) d[static_cast<std::size_t>(k)] = x(k, k);
  return d;
}

double rounded(double v) { return std::round(v * 1e9) / 1e9; }

bool lex_less(const Complex& p, const Complex& q) {
  const double pr = rounded(p.real());
  const double qr = rounded(q.real());
  if (pr != qr) return pr < qr;
  return rounded(p.imag()) < rounded(q.imag());
}

}  // namespace

SpectrumResult dense_spectrum(const Matrix& x) {
  if (x.rows() != x.cols()) throw DomainError("spectrum of a non-square matrix");
  if (!x.allFinite()) throw DomainError("spectrum of a matrix with non-finite entries");
  SpectrumResult out;
  if (x.rows() == 0) return out;

  // Exact for triangular matrices; the QR route would only add rounding.
  if (is_upper_triangular(x)) {
    out.eigenvalues = diagonal_of(x);
    return out;
  }
  if (is_upper_triangular(x.transpose())) {
    out.eigenvalues = diagonal_of(x);
    return out;
  }

  Eigen::ComplexEigenSolver<Matrix> solver(x, true);
  if (solver.info() != Eigen::Success) throw OracleFailure("complex QR iteration did not converge");
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  out.eigenvalues.assign(values.data(), values.data() + values.size());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const Eigen::VectorXcd v = vectors.col(k).normalized();
    worst = std::max(worst, (x * v - values(k) * v).norm());
  }
  out.backward_error = worst;
  const double allowed = 1e-10 * (1.0 + operator_norm(x, NormKind::spectral));
  if (!(worst < allowed)) {
    throw OracleFailure("eigenvalue backward error " + std::to_string(worst) + " exceeds tolerance");
  }
  return out;
}

SpectrumResult dense_spectrum(const OperatorMatrix& x) { return dense_spectrum(x.entries()); }

double match_spectra(const std::vector<Complex>& s1, const std::vector<Complex>& s2) {
  if (s1.size() != s2.size()) throw DomainError("spectra of different lengths cannot be matched");
  std::vector<Complex> p = s1;
  std::vector<Complex> q = s2;
  std::sort(p.begin(), p.end(), lex_less);
  std::sort(q.begin(), q.end(), lex_less);
  double sorted_dist = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sorted_dist = std::max(sorted_dist, std::abs(p[k] - q[k]));
  if (sorted_dist <= 1e-6) return sorted_dist;

  std::vector<bool> used(q.size(), false);
  double greedy_dist = 0.0;
  for (const Complex& z : p) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(z - q[k]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    used[best] = true;
    greedy_dist = std::max(greedy_dist, best_d);
  }
  return std::min(sorted_dist, greedy_dist);
}

}  // namespace simop
