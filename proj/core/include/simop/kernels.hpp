#pragma once

// Band-limiting multipliers and their time-domain kernels.
//
// Fourier convention: f^(lambda) = int f(t) exp(-i lambda t) dt, so
// f(t) = (1/2pi) int f^(lambda) exp(i lambda t) d lambda.
//
//   tau_a   trapezoid: 1 on |l| <= a, linear down to 0 at |l| = 2a
//   omega_a (1 - tau_a(l)) / l, with omega_a(0) = 0
//   phi_a   inverse transform of tau_a (closed form)
//   psi_a   inverse transform of omega_a (purely imaginary, odd)
//   psit_b  inverse transform of 1 / (|l - 2b| + 2b)
//
// The triangle pair is 1 - |l|/a on |l| <= a for tau and l/a^2 there for omega.

#include <complex>
#include <string_view>
#include <vector>

namespace simop {

enum class KernelKind { trapezoid, triangle };

std::string_view to_string(KernelKind kind);
KernelKind kernel_kind_from_string(std::string_view name);

struct MultiplierValues {
  double tau;
  double omega;
};

class MultiplierPair {
 public:
  /// Throws DomainError unless a is finite and positive.
  MultiplierPair(KernelKind kind, double a);

  KernelKind kind() const noexcept { return kind_; }
  double a() const noexcept { return a_; }

  double tau(double lambda) const noexcept;
  double omega(double lambda) const noexcept;

  /// sup over the real line of |omega|: 1/(2a) for the trapezoid, 1/a for the triangle.
  double omega_sup() const noexcept;

 private:
  KernelKind kind_;
  double a_;
};

/// Exact piecewise values of (tau, omega) at lambda. Throws DomainError for non-finite lambda.
MultiplierValues multiplier_pair(const MultiplierPair& pair, double lambda);

/// phi_a(t) = 2 sin(3at/2) sin(at/2) / (pi a t^2); the removable singularity at 0 gives 3a/(2pi).
double phi_kernel_sample(double a, double t);

/// psi_a(t). Frequency integral over [0, 200a] by Gauss-Legendre panels, the 1/lambda
/// tail beyond it by the sine integral. Returns 0 at t = 0 (odd kernel).
std::complex<double> psi_kernel_sample(double a, double t);

/// psit_b(t) = exp(2ibt) h(t) / (2b) with h >= 0 the inverse transform of 2b/(|l| + 2b).
/// Singular (logarithmically) at t = 0; throws DomainError there.
std::complex<double> psitilde_kernel_sample(double b, double t);

enum class KernelFamily { psi, psi_tilde };

struct KernelTable {
  KernelFamily family = KernelFamily::psi;
  double a = 0.0;
  std::vector<double> grid;                  // symmetric, uniform step
  std::vector<std::complex<double>> values;  // same length as grid
  double l1_estimate = 0.0;                  // trapezoid of |values| + tail_bound
  double quadrature_error_bound = 0.0;       // Richardson difference + tail_bound
  double tail_bound = 0.0;                   // analytic bound on the mass outside the grid
};

/// Samples psi_a (or psit_a) on [-half_width, half_width] with the given step and
/// estimates its L1 norm. Requires step < 1/(4a) and half_width >= 50/a.
/// For psi_tilde the sample at t = 0 holds the cell average over [-step/2, step/2].
/// Throws ResolutionError when the estimated discretisation error exceeds 1% of the estimate.
KernelTable psi_kernel_table(double a, double half_width, double step,
                             KernelFamily family = KernelFamily::psi);

struct L1Quadrature {
  double value = 0.0;        // converged trapezoid estimate plus tail bound
  double error_bound = 0.0;  // last Richardson difference plus tail bound
  double tail_bound = 0.0;
  double step = 0.0;         // final step
  int refinements = 0;
};

/// L1 norms by composite trapezoid with step halving until successive estimates
/// differ by less than 0.5%. Half width 200/a. Throw ResolutionError if that fails.
L1Quadrature phi_l1_norm(double a);
L1Quadrature psi_l1_norm(double a);
L1Quadrature psitilde_l1_norm(double b);

/// 2 pi ||psi_a||_2^2 by time-domain quadrature (Parseval: equals ||omega_a||_2^2).
double psi_l2_norm_squared_parseval(double a);

/// Closed forms used by the Lemma-type bound ||f||_1^2 <= 2 ||f^||_2 ||f^'||_2.
double omega_l2_norm_squared(double a);             // (4 - 4 ln 2) / a
double omega_derivative_l2_norm_squared(double a);  // 2 / (3 a^3)

struct NormBoundReport {
  double a = 0.0;
  L1Quadrature phi;
  L1Quadrature psi;
  L1Quadrature psitilde;  // with b = a
  double lemma_bound = 0.0;  // sqrt(2 ||omega||_2 ||omega'||_2)
  bool phi_ok = false;       // phi.value - phi.error_bound <= sqrt(3)
  bool psi_ok = false;       // psi.value - psi.error_bound <= 1.35 / a and <= lemma_bound
  bool psitilde_ok = false;  // |psitilde.value - 1/(2a)| <= 2% of 1/(2a)
  bool bounds_hold = false;
};

NormBoundReport verify_norm_bounds(double a);

}  // namespace simop
