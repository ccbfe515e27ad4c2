#include "simop/kernels.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_expint.h>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "simop/errors.hpp"

namespace simop {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFrequencyCutoff = 200.0;  // in units of a
constexpr double kNormHalfWidth = 200.0;    // in units of 1/a
constexpr double kRefineTolerance = 0.005;
constexpr int kMaxRefinements = 8;

// GSL aborts on domain errors by default; every call here checks its own inputs.
[[maybe_unused]] const gsl_error_handler_t* const kPreviousGslHandler = gsl_set_error_handler_off();

void require_positive(double a, const char* name) {
  if (!std::isfinite(a) || a <= 0.0) {
    throw DomainError(std::string(name) + " must be finite and positive, got " + std::to_string(a));
  }
}

// 16-point Gauss-Legendre rule on [-1, 1], taken once from GSL.
struct GaussLegendre16 {
  std::array<double, 16> x{};
  std::array<double, 16> w{};

  GaussLegendre16() {
    gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(16);
    for (std::size_t i = 0; i < 16; ++i) {
      gsl_integration_glfixed_point(-1.0, 1.0, i, &x[i], &w[i], table);
    }
    gsl_integration_glfixed_table_free(table);
  }
};

const GaussLegendre16& gauss16() {
  static const GaussLegendre16 rule;
  return rule;
}

// Integrates f over [lo, hi] with panels no wider than max_width.
template <class F>
double panel_integrate(F&& f, double lo, double hi, double max_width) {
  if (hi <= lo) return 0.0;
  const auto& rule = gauss16();
  const auto panels = static_cast<long>(std::ceil((hi - lo) / max_width));
  const double width = (hi - lo) / static_cast<double>(panels);
  const double half = 0.5 * width;
  double total = 0.0;
  for (long p = 0; p < panels; ++p) {
    const double mid = lo + (static_cast<double>(p) + 0.5) * width;
    double panel = 0.0;
    for (std::size_t i = 0; i < 16; ++i) panel += rule.w[i] * f(mid + half * rule.x[i]);
    total += half * panel;
  }
  return total;
}

double sine_integral(double x) { return gsl_sf_Si(x); }

// Imaginary part of psi_a for t > 0:
//   (1/pi) [ int_a^{2a} (1/a - 1/l) sin(lt) dl + int_{2a}^{L} sin(lt)/l dl + (pi/2 - Si(L t)) ].
double psi_imag_positive(double a, double t) {
  const double cutoff = kFrequencyCutoff * a;
  const double width = std::min(0.5 * a, 2.0 * kPi / t);
  const double inv_a = 1.0 / a;
  const double band = panel_integrate(
      [&](double l) { return (inv_a - 1.0 / l) * std::sin(l * t); }, a, 2.0 * a, width);
  const double body = panel_integrate(
      [&](double l) { return std::sin(l * t) / l; }, 2.0 * a, cutoff, width);
  const double tail = 0.5 * kPi - sine_integral(cutoff * t);
  return (band + body + tail) / kPi;
}

// h(t) = (c/pi) [ -Ci(ct) cos(ct) - (Si(ct) - pi/2) sin(ct) ], c = 2b, t > 0.
double psitilde_envelope(double b, double t) {
  const double c = 2.0 * b;
  const double x = c * t;
  return (c / kPi) * (-gsl_sf_Ci(x) * std::cos(x) - (sine_integral(x) - 0.5 * kPi) * std::sin(x));
}

// int_0^s h(t) w(t) dt with the log singularity of h removed by t = s u^2.
template <class Weight>
double psitilde_center_integral(double b, double s, Weight&& weight) {
  const auto& rule = gauss16();
  double total = 0.0;
  for (int panel = 0; panel < 4; ++panel) {
    const double lo = 0.25 * panel;
    const double half = 0.125;
    const double mid = lo + half;
    for (std::size_t i = 0; i < 16; ++i) {
      const double u = mid + half * rule.x[i];
      const double t = s * u * u;
      total += half * rule.w[i] * psitilde_envelope(b, t) * weight(t) * 2.0 * s * u;
    }
  }
  return total;
}

// Even, nonnegative integrand on [0, H] sampled at k*h, k = 1..K; the first cell [0, h]
// is handled by `center`. Returns the two-sided integral 2 * int_0^H.
template <class Center>
double even_trapezoid(const std::vector<double>& samples, double h, Center&& center) {
  double interior = 0.0;
  const std::size_t n = samples.size();  // samples[k-1] = f(k h)
  for (std::size_t k = 0; k + 1 < n; ++k) interior += samples[k];
  interior -= 0.5 * samples.front();
  interior += 0.5 * samples.back();
  return 2.0 * (center(h, samples.front()) + h * interior);
}

struct RefinedL1 {
  double trapezoid = 0.0;
  double difference = 0.0;
  double step = 0.0;
  int refinements = 0;
};

// Step halving on [0, half_width] starting at step0; samples are reused across levels.
template <class AbsSample, class Center>
RefinedL1 refine_l1(AbsSample&& abs_sample, Center&& center, double half_width, double step0,
                    const char* what) {
  const auto count = static_cast<std::size_t>(std::llround(half_width / step0));
  std::vector<double> samples(count);
  double h = half_width / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) samples[k] = abs_sample(static_cast<double>(k + 1) * h);
  double previous = even_trapezoid(samples, h, center);

  for (int level = 1; level <= kMaxRefinements; ++level) {
    std::vector<double> finer(2 * samples.size());
    const double fine_h = 0.5 * h;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      finer[2 * k] = abs_sample(static_cast<double>(2 * k + 1) * fine_h);
      finer[2 * k + 1] = samples[k];
    }
    samples = std::move(finer);
    h = fine_h;
    const double current = even_trapezoid(samples, h, center);
    const double diff = std::abs(current - previous);
    if (diff < kRefineTolerance * current) {
      return {current, diff, h, level};
    }
    previous = current;
  }
  throw ResolutionError(std::string(what) + ": step halving did not settle within 0.5%",
                        std::abs(previous));
}

double phi_tail_bound(double a, double half_width) { return 4.0 / (kPi * a * half_width); }
double psi_tail_bound(double a, double half_width) { return 5.0 / (kPi * a * a * half_width); }
double psitilde_tail_bound(double b, double half_width) { return 1.0 / (kPi * b * b * half_width); }

L1Quadrature finish(const RefinedL1& r, double tail) {
  return {r.trapezoid + tail, r.difference + tail, tail, r.step, r.refinements};
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::trapezoid ? "trapezoid" : "triangle";
}

KernelKind kernel_kind_from_string(std::string_view name) {
  if (name == "trapezoid") return KernelKind::trapezoid;
  if (name == "triangle") return KernelKind::triangle;
  throw DomainError("unknown kernel kind '" + std::string(name) + "'");
}

MultiplierPair::MultiplierPair(KernelKind kind, double a) : kind_(kind), a_(a) {
  require_positive(a, "kernel parameter a");
}

double MultiplierPair::tau(double lambda) const noexcept {
  const double m = std::abs(lambda);
  if (kind_ == KernelKind::triangle) return m <= a_ ? 1.0 - m / a_ : 0.0;
  if (m <= a_) return 1.0;
  if (m <= 2.0 * a_) return (2.0 * a_ - m) / a_;
  return 0.0;
}

double MultiplierPair::omega(double lambda) const noexcept {
  const double m = std::abs(lambda);
  if (kind_ == KernelKind::triangle) return m <= a_ ? lambda / (a_ * a_) : 1.0 / lambda;
  if (m <= a_) return 0.0;
  if (m <= 2.0 * a_) return (lambda > 0.0 ? 1.0 / a_ : -1.0 / a_) - 1.0 / lambda;
  return 1.0 / lambda;
}

double MultiplierPair::omega_sup() const noexcept {
  return kind_ == KernelKind::trapezoid ? 0.5 / a_ : 1.0 / a_;
}

MultiplierValues multiplier_pair(const MultiplierPair& pair, double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("multiplier argument must be finite");
  return {pair.tau(lambda), pair.omega(lambda)};
}

double phi_kernel_sample(double a, double t) {
  require_positive(a, "a");
  if (!std::isfinite(t)) throw DomainError("phi sample point must be finite");
  const double u = a * t;
  if (std::abs(u) < 1e-4) {
    // (a/pi) (3/2 - 15 u^2 / 24 + 63 u^4 / 720)
    const double u2 = u * u;
    return (a / kPi) * (1.5 - 0.625 * u2 + 0.0875 * u2 * u2);
  }
  return 2.0 * std::sin(1.5 * u) * std::sin(0.5 * u) / (kPi * a * t * t);
}

std::complex<double> psi_kernel_sample(double a, double t) {
  require_positive(a, "a");
  if (!std::isfinite(t)) throw DomainError("psi sample point must be finite");
  if (t == 0.0) return {0.0, 0.0};
  const double g = psi_imag_positive(a, std::abs(t));
  return {0.0, t > 0.0 ? g : -g};
}

std::complex<double> psitilde_kernel_sample(double b, double t) {
  require_positive(b, "b");
  if (!std::isfinite(t) || t == 0.0) throw DomainError("psitilde is singular at t = 0");
  const double h = psitilde_envelope(b, std::abs(t));
  return std::polar(h / (2.0 * b), 2.0 * b * t);
}

KernelTable psi_kernel_table(double a, double half_width, double step, KernelFamily family) {
  require_positive(a, "a");
  require_positive(half_width, "half_width");
  require_positive(step, "step");
  if (!(step < 0.25 / a)) throw DomainError("step must be smaller than 1/(4a)");
  if (half_width < 50.0 / a) throw DomainError("half_width must be at least 50/a");

  const auto count = static_cast<long>(std::floor(half_width / step + 1e-9));
  if (count < 4) throw DomainError("grid needs at least four points per side");

  KernelTable table;
  table.family = family;
  table.a = a;
  table.grid.resize(static_cast<std::size_t>(2 * count + 1));
  table.values.resize(table.grid.size());

  std::vector<double> abs_pos(static_cast<std::size_t>(count));  // |f(k step)|, k = 1..count
  for (long k = 1; k <= count; ++k) {
    const double t = static_cast<double>(k) * step;
    std::complex<double> v = family == KernelFamily::psi ? psi_kernel_sample(a, t)
                                                         : psitilde_kernel_sample(a, t);
    table.grid[static_cast<std::size_t>(count + k)] = t;
    table.grid[static_cast<std::size_t>(count - k)] = -t;
    table.values[static_cast<std::size_t>(count + k)] = v;
    // psi is odd and purely imaginary; psit(-t) = conj(psit(t)).
    table.values[static_cast<std::size_t>(count - k)] =
        family == KernelFamily::psi ? -v : std::conj(v);
    abs_pos[static_cast<std::size_t>(k - 1)] = std::abs(v);
  }
  table.grid[static_cast<std::size_t>(count)] = 0.0;

  double tail = 0.0;
  if (family == KernelFamily::psi) {
    table.values[static_cast<std::size_t>(count)] = {0.0, 0.0};
    tail = psi_tail_bound(a, static_cast<double>(count) * step);
  } else {
    const double half_cell = 0.5 * step;
    const double avg = 2.0 / step *
                       psitilde_center_integral(a, half_cell, [&](double t) {
                         return std::cos(2.0 * a * t) / (2.0 * a);
                       });
    table.values[static_cast<std::size_t>(count)] = {avg, 0.0};
    tail = psitilde_tail_bound(a, static_cast<double>(count) * step);
  }

  auto center = [&](double h, double first) {
    if (family == KernelFamily::psi) return 0.5 * h * (0.5 + first);  // |psi(0+)| = 1/2
    return psitilde_center_integral(a, h, [&](double) { return 1.0 / (2.0 * a); });
  };

  const double fine = even_trapezoid(abs_pos, step, center);
  // Coarse estimate on every other point over the same (even) range.
  const std::size_t even_count = abs_pos.size() - (abs_pos.size() % 2);
  std::vector<double> fine_even(abs_pos.begin(), abs_pos.begin() + static_cast<long>(even_count));
  std::vector<double> coarse;
  coarse.reserve(even_count / 2);
  for (std::size_t k = 1; k < even_count; k += 2) coarse.push_back(abs_pos[k]);
  const double diff = std::abs(even_trapezoid(fine_even, step, center) -
                               even_trapezoid(coarse, 2.0 * step, center));
  const double discretisation = diff / 3.0;

  table.tail_bound = tail;
  table.l1_estimate = fine + tail;
  table.quadrature_error_bound = discretisation + tail;
  if (discretisation > 0.01 * table.l1_estimate) {
    throw ResolutionError("kernel grid too coarse: discretisation error estimate exceeds 1%",
                          discretisation);
  }
  return table;
}

L1Quadrature phi_l1_norm(double a) {
  require_positive(a, "a");
  const double half_width = kNormHalfWidth / a;
  const double phi0 = phi_kernel_sample(a, 0.0);
  auto r = refine_l1([&](double t) { return std::abs(phi_kernel_sample(a, t)); },
                     [&](double h, double first) { return 0.5 * h * (phi0 + first); },
                     half_width, 0.125 / a, "phi L1 norm");
  return finish(r, phi_tail_bound(a, half_width));
}

L1Quadrature psi_l1_norm(double a) {
  require_positive(a, "a");
  const double half_width = kNormHalfWidth / a;
  auto r = refine_l1([&](double t) { return std::abs(psi_imag_positive(a, t)); },
                     [&](double h, double first) { return 0.5 * h * (0.5 + first); },
                     half_width, 0.125 / a, "psi L1 norm");
  return finish(r, psi_tail_bound(a, half_width));
}

L1Quadrature psitilde_l1_norm(double b) {
  require_positive(b, "b");
  const double half_width = kNormHalfWidth / b;
  const double scale = 1.0 / (2.0 * b);
  auto r = refine_l1(
      [&](double t) { return std::abs(psitilde_envelope(b, t)) * scale; },
      [&](double h, double) { return psitilde_center_integral(b, h, [&](double) { return scale; }); },
      half_width, 0.125 / b, "psitilde L1 norm");
  return finish(r, psitilde_tail_bound(b, half_width));
}

double psi_l2_norm_squared_parseval(double a) {
  require_positive(a, "a");
  const double half_width = 50.0 / a;
  const double h = 1.0 / (16.0 * a);
  const auto count = static_cast<long>(std::llround(half_width / h));
  double sum = 0.5 * 0.25;  // |psi(0+)|^2 = 1/4 at the first node of [0, H]
  for (long k = 1; k <= count; ++k) {
    const double g = psi_imag_positive(a, static_cast<double>(k) * h);
    sum += (k == count ? 0.5 : 1.0) * g * g;
  }
  return 2.0 * kPi * 2.0 * h * sum;
}

double omega_l2_norm_squared(double a) {
  require_positive(a, "a");
  return (4.0 - 4.0 * std::numbers::ln2) / a;
}

double omega_derivative_l2_norm_squared(double a) {
  require_positive(a, "a");
  return 2.0 / (3.0 * a * a * a);
}

NormBoundReport verify_norm_bounds(double a) {
  require_positive(a, "a");
  NormBoundReport report;
  report.a = a;
  report.phi = phi_l1_norm(a);
  report.psi = psi_l1_norm(a);
  report.psitilde = psitilde_l1_norm(a);
  report.lemma_bound = std::sqrt(2.0 * std::sqrt(omega_l2_norm_squared(a)) *
                                 std::sqrt(omega_derivative_l2_norm_squared(a)));

  const double target = 1.0 / (2.0 * a);
  report.phi_ok = report.phi.value - report.phi.error_bound <= std::sqrt(3.0);
  const double psi_low = report.psi.value - report.psi.error_bound;
  report.psi_ok = psi_low <= 1.35 / a && psi_low <= report.lemma_bound;
  report.psitilde_ok = std::abs(report.psitilde.value - target) <= 0.02 * target;
  report.bounds_hold = report.phi_ok && report.psi_ok && report.psitilde_ok;
  return report;
}

}  // namespace simop
