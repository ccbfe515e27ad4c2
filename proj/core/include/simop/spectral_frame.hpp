#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace simop {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// The unperturbed operator A = diag(eigenvalues) in its spectral basis.
///
/// Eigenvalue order is the matrix index order. Repeated eigenvalues are allowed;
/// min_gap() is taken over pairs of distinct values and is 0 when there are none.
class SpectralFrame {
 public:
  /// Throws DomainError on an empty list or non-finite values.
  static SpectralFrame make(std::vector<double> eigenvalues);

  /// lambda_k = first + k * spacing, k = 0..size-1.
  static SpectralFrame arithmetic(double first, double spacing, std::size_t size);

  std::size_t size() const noexcept { return eigenvalues_.size(); }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  double eigenvalue(std::size_t k) const { return eigenvalues_.at(k); }
  double min_gap() const noexcept { return min_gap_; }

  /// Sorted distinct values of lambda_i - lambda_j.
  std::span<const double> difference_set() const noexcept { return differences_; }

  /// Content hash of the eigenvalue list; matrices carry it to prove which frame they belong to.
  std::uint64_t tag() const noexcept { return tag_; }

  /// A as a dense matrix.
  Matrix diagonal_matrix() const;

  friend bool operator==(const SpectralFrame& x, const SpectralFrame& y) {
    return x.eigenvalues_ == y.eigenvalues_;
  }

 private:
  explicit SpectralFrame(std::vector<double> eigenvalues);

  std::vector<double> eigenvalues_;
  std::vector<double> differences_;
  double min_gap_ = 0.0;
  std::uint64_t tag_ = 0;
};

/// Dense complex square matrix tied to a spectral frame. Immutable.
class OperatorMatrix {
 public:
  /// Throws DomainError unless entries are square, finite, and sized to the frame.
  OperatorMatrix(const SpectralFrame& frame, Matrix entries);

  static OperatorMatrix zero(const SpectralFrame& frame);
  static OperatorMatrix identity(const SpectralFrame& frame);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& entries() const noexcept { return entries_; }
  std::uint64_t frame_tag() const noexcept { return frame_tag_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  bool belongs_to(const SpectralFrame& frame) const noexcept {
    return frame_tag_ == frame.tag() && dim() == frame.size();
  }

 private:
  OperatorMatrix(std::uint64_t tag, Matrix entries) : entries_(std::move(entries)), frame_tag_(tag) {}

  Matrix entries_;
  std::uint64_t frame_tag_;
};

/// Throws DomainError when X is not tied to the frame.
void require_frame(const SpectralFrame& frame, const OperatorMatrix& x);

enum class NormKind { spectral, frobenius };

std::string_view to_string(NormKind kind);
NormKind norm_kind_from_string(std::string_view name);

/// Largest singular value or Hilbert-Schmidt norm.
double operator_norm(const Matrix& x, NormKind kind);
double operator_norm(const OperatorMatrix& x, NormKind kind);

/// (A - zI)^{-1} = diag(1/(lambda_k - z)). Throws SingularityError when z is within
/// 1e-14 of an eigenvalue.
OperatorMatrix resolvent(const SpectralFrame& frame, Complex z);

/// True iff no eigenvalue difference lies in (-2a, -a) U (a, 2a).
bool check_gap_condition(const SpectralFrame& frame, double a);

}  // namespace simop
