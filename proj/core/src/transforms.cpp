#include "simop/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "simop/errors.hpp"

namespace simop {
namespace {

double weight(const MultiplierPair& pair, TransformRole role, double delta, bool pinching) {
  if (pinching) {
    if (role == TransformRole::J) return delta == 0.0 ? 1.0 : 0.0;
    return delta == 0.0 ? 0.0 : 1.0 / delta;
  }
  return role == TransformRole::J ? pair.tau(delta) : pair.omega(delta);
}

}  // namespace

bool transform_is_diagonal_extraction(const SpectralFrame& frame, const MultiplierPair& pair) {
  for (double d : frame.difference_set()) {
    if (d != 0.0 && pair.tau(d) != 0.0) return false;
  }
  return true;
}

bool transform_is_idempotent(const SpectralFrame& frame, const MultiplierPair& pair) {
  for (double d : frame.difference_set()) {
    const double t = pair.tau(d);
    if (t != 0.0 && t != 1.0) return false;
  }
  return true;
}

bool homological_identity_exact(const SpectralFrame& frame, const MultiplierPair& pair) {
  for (double d : frame.difference_set()) {
    if (std::abs(1.0 - pair.tau(d) - d * pair.omega(d)) > 1e-14) return false;
  }
  return true;
}

Matrix multiplier_weights(const SpectralFrame& frame, const MultiplierPair& pair, TransformRole role) {
  // Closed form only for the trapezoid; the triangle's omega differs from 1/l inside (0, a).
  const bool pinching =
      pair.kind() == KernelKind::trapezoid && transform_is_diagonal_extraction(frame, pair);
  const auto n = static_cast<Eigen::Index>(frame.size());
  const auto ev = frame.eigenvalues();
  Matrix w(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double delta = ev[static_cast<std::size_t>(i)] - ev[static_cast<std::size_t>(j)];
      w(i, j) = weight(pair, role, delta, pinching);
    }
  }
  return w;
}

OperatorMatrix apply_toeplitz_multiplier(const SpectralFrame& frame, const MultiplierPair& pair,
                                         TransformRole role, const OperatorMatrix& x) {
  require_frame(frame, x);
  return OperatorMatrix(frame, multiplier_weights(frame, pair, role).cwiseProduct(x.entries()));
}

SchurTransforms::SchurTransforms(const SpectralFrame& frame, const MultiplierPair& pair)
    : pair_(pair),
      j_weights_(multiplier_weights(frame, pair, TransformRole::J)),
      gamma_weights_(multiplier_weights(frame, pair, TransformRole::Gamma)) {}

double homological_residual(const SpectralFrame& frame, const MultiplierPair& pair, const OperatorMatrix& x,
                            NormKind norm) {
  require_frame(frame, x);
  const SchurTransforms t(frame, pair);
  const Matrix gx = t.Gamma(x.entries());
  const auto ev = frame.eigenvalues();
  const auto n = static_cast<Eigen::Index>(frame.size());
  // A G - G A is entrywise (lambda_i - lambda_j) G_ij.
  Matrix comm(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      comm(i, j) = (ev[static_cast<std::size_t>(i)] - ev[static_cast<std::size_t>(j)]) * gx(i, j);
    }
  }
  return operator_norm(Matrix(comm - x.entries() + t.J(x.entries())), norm);
}

std::string_view to_string(SupportClass cls) {
  switch (cls) {
    case SupportClass::zero: return "zero";
    case SupportClass::memoryless: return "memoryless";
    case SupportClass::causal: return "causal";
    case SupportClass::anticausal: return "anticausal";
    case SupportClass::hypercausal: return "hypercausal";
    case SupportClass::hyperanticausal: return "hyperanticausal";
    case SupportClass::mixed: return "mixed";
  }
  return "mixed";
}

SupportSet beurling_support(const SpectralFrame& frame, const Matrix& x, double tol) {
  if (!(tol >= 0.0)) throw DomainError("support tolerance must be nonnegative");
  if (static_cast<std::size_t>(x.rows()) != frame.size() || x.rows() != x.cols()) {
    throw DomainError("matrix does not match the spectral frame");
  }
  SupportSet s;
  const double cut = tol * x.norm();
  const auto ev = frame.eigenvalues();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (std::abs(x(i, j)) > cut) {
        s.offsets.push_back(ev[static_cast<std::size_t>(i)] - ev[static_cast<std::size_t>(j)]);
      }
    }
  }
  std::sort(s.offsets.begin(), s.offsets.end());
  s.offsets.erase(std::unique(s.offsets.begin(), s.offsets.end()), s.offsets.end());

  if (s.offsets.empty()) {
    s.cls = SupportClass::zero;
  } else if (s.min_offset() == 0.0 && s.max_offset() == 0.0) {
    s.cls = SupportClass::memoryless;
  } else if (s.min_offset() > 0.0) {
    s.cls = SupportClass::hypercausal;
  } else if (s.max_offset() < 0.0) {
    s.cls = SupportClass::hyperanticausal;
  } else if (s.min_offset() >= 0.0) {
    s.cls = SupportClass::causal;
  } else if (s.max_offset() <= 0.0) {
    s.cls = SupportClass::anticausal;
  } else {
    s.cls = SupportClass::mixed;
  }
  return s;
}

SupportSet beurling_support(const SpectralFrame& frame, const OperatorMatrix& x, double tol) {
  require_frame(frame, x);
  return beurling_support(frame, x.entries(), tol);
}

}  // namespace simop
