#include "simop/similarity.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <random>

#include "simop/eigen_oracle.hpp"

namespace simop {
namespace {

constexpr double kDivergenceFactor = 100.0;
constexpr double kVerificationLimit = 1e-6;

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

// J((Gamma X)(J Y)) = 0, probed on random X, Y.
bool bilinear_condition_holds(const SchurTransforms& t, Eigen::Index n) {
  std::mt19937_64 rng(0x5eed);
  for (int probe = 0; probe < 4; ++probe) {
    const Matrix x = random_matrix(rng, n);
    const Matrix y = random_matrix(rng, n);
    const Matrix z = t.J(t.Gamma(x) * t.J(y));
    const double scale = operator_norm(x, NormKind::spectral) * operator_norm(y, NormKind::spectral);
    if (operator_norm(z, NormKind::spectral) >= 1e-12 * scale) return false;
  }
  return true;
}

std::optional<double> ball_bound_for(Variant v, double norm_b) {
  switch (v) {
    case Variant::phi: return std::numbers::sqrt2 * norm_b;
    case Variant::phi1: return 3.0 * norm_b;
    case Variant::phi3: return norm_b;
    default: return std::nullopt;
  }
}

void finish(const SpectralFrame& frame, SimilarityReport& r, const SchurTransforms& t) {
  const Intertwiner w = build_intertwiner(t.Gamma(r.X_star));
  r.U = w.U;
  r.U_inverse = w.U_inverse;
  r.condition_number = w.condition_number;
  r.inverse_error = w.inverse_error;
  r.neumann_discrepancy = w.neumann_discrepancy;

  const SimilarityCheck check = verify_similarity(frame, r.B, r.JX_star, r.U, r.norm);
  r.residual_rel = check.residual_rel;
  r.residual_abs = check.residual_abs;
  r.spectra = check.spectra;
  if (!(r.residual_rel <= kVerificationLimit)) {
    throw VerificationError("intertwining residual " + std::to_string(r.residual_rel) +
                            " exceeds the verification limit");
  }
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::phi: return "phi";
    case Variant::phi1: return "phi1";
    case Variant::phi2: return "phi2";
    case Variant::phi3: return "phi3";
    case Variant::series: return "series";
  }
  return "phi";
}

Variant variant_from_string(std::string_view name) {
  if (name == "phi") return Variant::phi;
  if (name == "phi1") return Variant::phi1;
  if (name == "phi2") return Variant::phi2;
  if (name == "phi3") return Variant::phi3;
  if (name == "series") return Variant::series;
  throw DomainError("unknown variant '" + std::string(name) + "'");
}

double variant_constant(Variant v) {
  switch (v) {
    case Variant::phi: return 3.0 + 2.0 * std::numbers::sqrt2;
    case Variant::phi1: return 4.0;
    case Variant::phi2: return 3.0;
    case Variant::phi3: return 2.0;
    case Variant::series: return 0.0;
  }
  return 0.0;
}

void IterationConfig::validate() const {
  if (!std::isfinite(a) || a <= 0.0) throw DomainError("iteration parameter a must be positive");
  if (!std::isfinite(tol) || tol <= 0.0) throw DomainError("tolerance must be positive");
  if (max_iter < 1) throw DomainError("max_iter must be at least 1");
}

ContractionBudget contraction_budget(const SpectralFrame& frame, const IterationConfig& config,
                                     const OperatorMatrix& b) {
  config.validate();
  require_frame(frame, b);
  const MultiplierPair pair(config.kernel, config.a);
  ContractionBudget budget;
  budget.variant = config.variant;
  budget.c = variant_constant(config.variant);
  budget.norm_B = operator_norm(b, config.norm);

  if (config.norm == NormKind::frobenius) {
    budget.j = 1.0;
    budget.gamma = pair.omega_sup();
  } else if (config.kernel == KernelKind::triangle) {
    // Fejer kernel: nonnegative with unit mass. Gamma from the L2 bound on the kernel's L1 norm.
    budget.j = 1.0;
    budget.gamma = 4.0 / (std::sqrt(3.0) * config.a);
  } else {
    const bool pinching = transform_is_diagonal_extraction(frame, pair);
    budget.j = (config.tight && pinching) ? 1.0 : std::sqrt(3.0);
    budget.gamma = 1.35 / config.a;
  }
  if (config.variant == Variant::phi3) budget.j = 1.0;

  budget.lhs = budget.c * budget.j * budget.gamma * budget.norm_B;
  budget.satisfied = budget.lhs < budget.threshold;
  return budget;
}

Matrix apply_variant_map(Variant v, const SchurTransforms& t, const Matrix& b, const Matrix& x) {
  const Matrix gx = t.Gamma(x);
  switch (v) {
    case Variant::phi:
      return b * gx - gx * t.J(x) + b;
    case Variant::phi1: {
      const Matrix bgx = b * gx;
      return bgx - gx * t.J(b) - gx * t.J(bgx) + b;
    }
    case Variant::phi2: {
      const Matrix bgx = b * gx;
      return bgx - gx * t.J(bgx) + b;
    }
    case Variant::phi3:
      return b * gx + b;
    case Variant::series:
      break;
  }
  throw DomainError("the series variant has no fixed-point map");
}

Intertwiner build_intertwiner(const Matrix& gamma_x) {
  if (gamma_x.rows() != gamma_x.cols()) throw DomainError("intertwiner needs a square matrix");
  const Eigen::Index n = gamma_x.rows();
  const Matrix id = Matrix::Identity(n, n);
  Intertwiner w;
  w.U = id + gamma_x;

  Eigen::BDCSVD<Matrix> svd(w.U);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  w.condition_number = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  if (!(w.condition_number <= 1e12)) {
    throw SingularityError("intertwiner is numerically singular (condition number " +
                           std::to_string(w.condition_number) + ")");
  }
  w.U_inverse = w.U.partialPivLu().inverse();
  w.inverse_error = operator_norm(Matrix(w.U * w.U_inverse - id), NormKind::spectral);

  const double g = operator_norm(gamma_x, NormKind::spectral);
  if (g < 1.0) {
    Matrix sum = id;
    Matrix term = id;
    for (int k = 1; k <= 2000; ++k) {
      term = -(term * gamma_x);
      sum += term;
      if (operator_norm(term, NormKind::frobenius) < 1e-15 * sum.norm()) break;
    }
    w.neumann_discrepancy = operator_norm(Matrix(sum - w.U_inverse), NormKind::spectral);
  }
  return w;
}

SimilarityCheck verify_similarity(const SpectralFrame& frame, const Matrix& b, const Matrix& jx_star,
                                  const Matrix& u, NormKind norm) {
  const auto n = static_cast<Eigen::Index>(frame.size());
  if (b.rows() != n || jx_star.rows() != n || u.rows() != n || b.cols() != n || jx_star.cols() != n ||
      u.cols() != n) {
    throw DomainError("similarity check needs matrices sized to the frame");
  }
  const Matrix a = frame.diagonal_matrix();
  const Matrix lhs_op = a - b;
  const Matrix rhs_op = a - jx_star;
  SimilarityCheck c;
  c.norm_A_minus_B = operator_norm(lhs_op, norm);
  c.residual_abs = operator_norm(Matrix(lhs_op * u - u * rhs_op), norm);
  c.residual_rel = c.residual_abs / std::max(1.0, c.norm_A_minus_B);
  c.spectra.perturbed = dense_spectrum(lhs_op).eigenvalues;
  c.spectra.reduced = dense_spectrum(rhs_op).eigenvalues;
  c.spectra.max_match_distance = match_spectra(c.spectra.perturbed, c.spectra.reduced);
  return c;
}

SimilarityReport iterate_fixed_point(const SpectralFrame& frame, const OperatorMatrix& b,
                                     const IterationConfig& config) {
  config.validate();
  require_frame(frame, b);
  if (config.variant == Variant::series) return hypercausal_series(frame, b, config);

  const MultiplierPair pair(config.kernel, config.a);
  if (config.kernel == KernelKind::triangle && !homological_identity_exact(frame, pair)) {
    throw StructuralError("triangle pair: an eigenvalue difference lies inside (0, a), so the homological identity fails");
  }
  const SchurTransforms t(frame, pair);
  const Matrix& bm = b.entries();
  const auto n = bm.rows();

  SimilarityReport r;
  r.requested_variant = config.variant;
  r.variant = config.variant;
  r.a = config.a;
  r.kernel = config.kernel;
  r.norm = config.norm;
  r.B = bm;

  if (r.variant == Variant::phi1 || r.variant == Variant::phi2) {
    if (!check_gap_condition(frame, config.a) || !transform_is_idempotent(frame, pair)) {
      throw StructuralError("gap condition fails: an eigenvalue difference lies in (a, 2a)");
    }
    if (!bilinear_condition_holds(t, n)) {
      r.notes.emplace_back("J((Gamma X) J Y) != 0 on this frame; fell back to variant phi");
      r.variant = Variant::phi;
    }
  }
  const double norm_b = operator_norm(bm, config.norm);
  if (r.variant == Variant::phi2 && operator_norm(t.J(bm), config.norm) >= 1e-12 * norm_b && norm_b > 0.0) {
    throw StructuralError("variant phi2 requires JB = 0");
  }
  if (r.variant == Variant::phi3) {
    for (double d : beurling_support(frame, bm).offsets) {
      if (std::abs(d) <= 2.0 * config.a) {
        throw StructuralError("variant phi3 requires the support of B to avoid [-2a, 2a]");
      }
    }
  }

  IterationConfig effective = config;
  effective.variant = r.variant;
  r.budget = contraction_budget(frame, effective, b);
  if (!r.budget.satisfied && !config.force) {
    throw BudgetError("contraction budget fails: lhs = " + std::to_string(r.budget.lhs) + " >= 1", r.budget);
  }

  Matrix x = bm;
  if (norm_b == 0.0) {
    r.iterations = 1;
    r.convergence_log.push_back(0.0);
  } else {
    bool converged = false;
    for (int it = 1; it <= config.max_iter; ++it) {
      Matrix next = apply_variant_map(r.variant, t, bm, x);
      const double update = operator_norm(Matrix(next - x), config.norm);
      r.convergence_log.push_back(update);
      r.iterations = it;
      x = std::move(next);
      if (!std::isfinite(update) || update > kDivergenceFactor * norm_b) {
        throw NonConvergenceError("iteration diverged at step " + std::to_string(it), r.convergence_log);
      }
      if (update / norm_b < config.tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NonConvergenceError("no convergence within " + std::to_string(config.max_iter) + " iterations",
                                r.convergence_log);
    }
  }
  r.X_star = x;
  r.JX_star = t.J(x);

  r.ball_radius = operator_norm(Matrix(x - bm), config.norm);
  r.ball_bound = ball_bound_for(r.variant, norm_b);
  r.ball_ok = !r.ball_bound || r.ball_radius <= *r.ball_bound * (1.0 + 1e-12);
  if (!r.ball_ok && r.budget.satisfied) {
    throw VerificationError("fixed point left the guaranteed ball: ||X* - B|| = " + std::to_string(r.ball_radius));
  }

  finish(frame, r, t);
  return r;
}

SimilarityReport hypercausal_series(const SpectralFrame& frame, const OperatorMatrix& b,
                                    const IterationConfig& config) {
  config.validate();
  require_frame(frame, b);
  const MultiplierPair pair(config.kernel, config.a);
  if (config.kernel == KernelKind::triangle && !homological_identity_exact(frame, pair)) {
    throw StructuralError("triangle pair: an eigenvalue difference lies inside (0, a), so the homological identity fails");
  }
  const Matrix& bm = b.entries();
  const double two_a = 2.0 * config.a;
  const SupportSet support = beurling_support(frame, bm);
  const bool forward = support.cls == SupportClass::hypercausal && support.min_offset() >= two_a * (1.0 - 1e-12);
  const bool backward =
      support.cls == SupportClass::hyperanticausal && -support.max_offset() >= two_a * (1.0 - 1e-12);
  if (support.cls != SupportClass::zero && !forward && !backward) {
    throw StructuralError("series needs a one-sided support of B with offsets of modulus >= 2a (found " +
                          std::string(to_string(support.cls)) + ")");
  }

  const SchurTransforms t(frame, pair);
  SimilarityReport r;
  r.variant = Variant::series;
  r.requested_variant = config.variant;
  r.a = config.a;
  r.kernel = config.kernel;
  r.norm = config.norm;
  r.B = bm;
  IterationConfig effective = config;
  effective.variant = Variant::series;
  r.budget = contraction_budget(frame, effective, b);

  const double norm_b = operator_norm(bm, config.norm);
  const double log_norm_b = std::log(norm_b);
  Matrix x = bm;
  Matrix term = bm;
  for (int n = 1;; ++n) {
    const double term_norm = operator_norm(term, config.norm);
    SeriesTerm st;
    st.n = n;
    st.norm = term_norm;
    st.bound = norm_b == 0.0 ? 0.0
                             : std::exp(n * log_norm_b - (n - 1) * std::log(two_a) - std::lgamma(static_cast<double>(n)));
    st.within_bound = term_norm <= st.bound * (1.0 + 1e-12);
    r.terms.push_back(st);
    r.convergence_log.push_back(term_norm);
    r.iterations = n;
    if (n > 1) x += term;
    if (term_norm == 0.0 || term_norm < config.tol * norm_b) break;
    if (n >= config.max_iter) {
      throw NonConvergenceError("series did not terminate within " + std::to_string(config.max_iter) + " terms",
                                r.convergence_log);
    }
    term = bm * t.Gamma(term);
  }
  r.X_star = x;
  const auto dim = bm.rows();
  r.JX_star = Matrix::Zero(dim, dim);
  r.ball_radius = operator_norm(Matrix(x - bm), config.norm);
  finish(frame, r, t);
  return r;
}

}  // namespace simop
