#include "simop/spectral_frame.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "simop/errors.hpp"

namespace simop {
namespace {

std::uint64_t fnv1a(std::span<const double> values) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (double v : values) {
    // +0.0 and -0.0 are the same eigenvalue.
    const auto bits = std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v);
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (bits >> (8 * byte)) & 0xffU;
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

}  // namespace

SpectralFrame::SpectralFrame(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  const std::size_t n = eigenvalues_.size();
  differences_.reserve(n * n);
  for (double li : eigenvalues_) {
    for (double lj : eigenvalues_) differences_.push_back(li - lj);
  }
  std::sort(differences_.begin(), differences_.end());
  differences_.erase(std::unique(differences_.begin(), differences_.end()), differences_.end());

  std::vector<double> sorted = eigenvalues_;
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    const double step = sorted[k] - sorted[k - 1];
    if (step > 0.0) gap = std::min(gap, step);
  }
  min_gap_ = std::isfinite(gap) ? gap : 0.0;
  tag_ = fnv1a(eigenvalues_);
}

SpectralFrame SpectralFrame::make(std::vector<double> eigenvalues) {
  if (eigenvalues.empty()) throw DomainError("spectral frame needs at least one eigenvalue");
  for (double v : eigenvalues) {
    if (!std::isfinite(v)) throw DomainError("spectral frame eigenvalues must be finite");
  }
  return SpectralFrame(std::move(eigenvalues));
}

SpectralFrame SpectralFrame::arithmetic(double first, double spacing, std::size_t size) {
  std::vector<double> values(size);
  for (std::size_t k = 0; k < size; ++k) values[k] = first + spacing * static_cast<double>(k);
  return make(std::move(values));
}

Matrix SpectralFrame::diagonal_matrix() const {
  Eigen::VectorXcd diag(static_cast<Eigen::Index>(size()));
  for (std::size_t k = 0; k < size(); ++k) diag(static_cast<Eigen::Index>(k)) = eigenvalues_[k];
  return diag.asDiagonal();
}

OperatorMatrix::OperatorMatrix(const SpectralFrame& frame, Matrix entries)
    : entries_(std::move(entries)), frame_tag_(frame.tag()) {
  if (entries_.rows() != entries_.cols()) throw DomainError("operator matrix must be square");
  if (static_cast<std::size_t>(entries_.rows()) != frame.size()) {
    throw DomainError("operator matrix dimension " + std::to_string(entries_.rows()) +
                      " does not match frame size " + std::to_string(frame.size()));
  }
  if (!entries_.allFinite()) throw DomainError("operator matrix entries must be finite");
}

OperatorMatrix OperatorMatrix::zero(const SpectralFrame& frame) {
  const auto n = static_cast<Eigen::Index>(frame.size());
  return OperatorMatrix(frame.tag(), Matrix::Zero(n, n));
}

OperatorMatrix OperatorMatrix::identity(const SpectralFrame& frame) {
  const auto n = static_cast<Eigen::Index>(frame.size());
  return OperatorMatrix(frame.tag(), Matrix::Identity(n, n));
}

void require_frame(const SpectralFrame& frame, const OperatorMatrix& x) {
  if (!x.belongs_to(frame)) throw DomainError("operator matrix is not tied to this spectral frame");
}

std::string_view to_string(NormKind kind) {
  return kind == NormKind::spectral ? "spectral" : "frobenius";
}

NormKind norm_kind_from_string(std::string_view name) {
  if (name == "spectral") return NormKind::spectral;
  if (name == "frobenius") return NormKind::frobenius;
  throw DomainError("unknown norm kind '" + std::string(name) + "'");
}

double operator_norm(const Matrix& x, NormKind kind) {
  if (x.size() == 0) return 0.0;
  if (kind == NormKind::frobenius) return x.norm();
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

double operator_norm(const OperatorMatrix& x, NormKind kind) { return operator_norm(x.entries(), kind); }

OperatorMatrix resolvent(const SpectralFrame& frame, Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("resolvent point must be finite");
  const auto n = static_cast<Eigen::Index>(frame.size());
  Matrix r = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex shift = frame.eigenvalue(static_cast<std::size_t>(k)) - z;
    if (std::abs(shift) < 1e-14) {
      throw SingularityError("resolvent evaluated at an eigenvalue of A");
    }
    r(k, k) = 1.0 / shift;
  }
  return OperatorMatrix(frame, std::move(r));
}

bool check_gap_condition(const SpectralFrame& frame, double a) {
  if (!std::isfinite(a) || a <= 0.0) throw DomainError("gap condition needs a > 0");
  for (double d : frame.difference_set()) {
    const double m = std::abs(d);
    if (m > a && m < 2.0 * a) return false;
  }
  return true;
}

}  // namespace simop
