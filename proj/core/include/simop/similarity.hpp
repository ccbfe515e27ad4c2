#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simop/errors.hpp"
#include "simop/kernels.hpp"
#include "simop/spectral_frame.hpp"
#include "simop/transforms.hpp"

namespace simop {

enum class Variant { phi, phi1, phi2, phi3, series };

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view name);

/// c(variant) in the contraction condition c j gamma ||B|| < 1.
double variant_constant(Variant v);

struct IterationConfig {
  Variant variant = Variant::phi;
  double a = 0.5;
  KernelKind kernel = KernelKind::trapezoid;
  double tol = 1e-12;
  int max_iter = 10000;
  NormKind norm = NormKind::spectral;
  bool force = false;  // iterate even when the budget fails
  bool tight = false;  // j = 1 when J is a pinching

  /// Throws DomainError on a <= 0, tol <= 0 or max_iter < 1.
  void validate() const;
};

struct ContractionBudget {
  Variant variant = Variant::phi;
  double c = 0.0;
  double j = 1.0;
  double gamma = 0.0;
  double norm_B = 0.0;
  double lhs = 0.0;
  double threshold = 1.0;
  bool satisfied = true;
};

/// Advisory: never throws for a well-formed B.
ContractionBudget contraction_budget(const SpectralFrame& frame, const IterationConfig& config,
                                     const OperatorMatrix& b);

/// The contraction budget failed and force was not set.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, ContractionBudget budget) : Error(what), budget_(budget) {}
  const ContractionBudget& budget() const noexcept { return budget_; }

 private:
  ContractionBudget budget_;
};

/// One step X -> Phi(X) of the selected variant (series is not a map and throws DomainError).
Matrix apply_variant_map(Variant v, const SchurTransforms& t, const Matrix& b, const Matrix& x);

struct Intertwiner {
  Matrix U;
  Matrix U_inverse;
  double condition_number = 1.0;
  double inverse_error = 0.0;                      // ||U U^{-1} - I||
  std::optional<double> neumann_discrepancy;       // set when ||GammaX|| < 1
};

/// U = I + GammaX, inverse by LU. Throws SingularityError when cond(U) > 1e12.
Intertwiner build_intertwiner(const Matrix& gamma_x);

struct SpectraComparison {
  std::vector<Complex> perturbed;  // sigma(A - B)
  std::vector<Complex> reduced;    // sigma(A - JX*)
  double max_match_distance = 0.0;
};

struct SimilarityCheck {
  double residual_rel = 0.0;  // ||(A-B)U - U(A-JX*)|| / max(1, ||A-B||)
  double residual_abs = 0.0;
  double norm_A_minus_B = 0.0;
  SpectraComparison spectra;
};

SimilarityCheck verify_similarity(const SpectralFrame& frame, const Matrix& b, const Matrix& jx_star,
                                  const Matrix& u, NormKind norm = NormKind::spectral);

struct SeriesTerm {
  int n = 0;
  double norm = 0.0;
  double bound = 0.0;  // ||B||^n / ((2a)^(n-1) (n-1)!)
  bool within_bound = true;
};

struct SimilarityReport {
  Variant variant = Variant::phi;            // variant actually run
  Variant requested_variant = Variant::phi;  // differs after a fallback to phi
  double a = 0.0;
  KernelKind kernel = KernelKind::trapezoid;
  NormKind norm = NormKind::spectral;
  Matrix B;
  Matrix X_star;
  Matrix JX_star;
  Matrix U;
  Matrix U_inverse;
  double residual_rel = 0.0;
  double residual_abs = 0.0;
  int iterations = 0;
  std::vector<double> convergence_log;  // update norms ||X_{n+1} - X_n||
  ContractionBudget budget;
  SpectraComparison spectra;
  double ball_radius = 0.0;  // ||X* - B||
  std::optional<double> ball_bound;
  bool ball_ok = true;
  double condition_number = 1.0;
  double inverse_error = 0.0;
  std::optional<double> neumann_discrepancy;
  std::vector<SeriesTerm> terms;  // series variant only
  std::vector<std::string> notes;
};

/// Simple iterations X_1 = B, X_{n+1} = Phi(X_n) for variants phi, phi1, phi2, phi3.
/// Dispatches to hypercausal_series for Variant::series.
SimilarityReport iterate_fixed_point(const SpectralFrame& frame, const OperatorMatrix& b,
                                     const IterationConfig& config);

/// X* = B + B Gamma B + B Gamma(B Gamma B) + ... for one-sided B with offsets of modulus >= 2a.
SimilarityReport hypercausal_series(const SpectralFrame& frame, const OperatorMatrix& b,
                                    const IterationConfig& config);

}  // namespace simop
