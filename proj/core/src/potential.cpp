#include "simop/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "simop/eigen_oracle.hpp"

namespace simop {
namespace {

using Sequence = std::vector<Complex>;  // index n + M for n = -M..M

Sequence convolve(const Sequence& p, const Sequence& q, int m) {
  Sequence r(p.size(), Complex(0.0, 0.0));
  for (int n = -m; n <= m; ++n) {
    Complex acc(0.0, 0.0);
    const int lo = std::max(-m, n - m);
    const int hi = std::min(m, n + m);
    for (int k = lo; k <= hi; ++k) acc += p[static_cast<std::size_t>(k + m)] * q[static_cast<std::size_t>(n - k + m)];
    r[static_cast<std::size_t>(n + m)] = acc;
  }
  return r;
}

Sequence scale(const Sequence& x, const std::vector<double>& w) {
  Sequence r(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) r[k] = w[k] * x[k];
  return r;
}

Sequence add(const Sequence& x, const Sequence& y, double s = 1.0) {
  Sequence r(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) r[k] = x[k] + s * y[k];
  return r;
}

double l1(const Sequence& x) {
  double s = 0.0;
  for (const Complex& z : x) s += std::abs(z);
  return s;
}

struct CoefficientTransforms {
  std::vector<double> tau;
  std::vector<double> omega;
};

Sequence coefficient_map(Variant v, const CoefficientTransforms& t, const Sequence& b, const Sequence& x, int m) {
  const Sequence gx = scale(x, t.omega);
  switch (v) {
    case Variant::phi:
      return add(add(convolve(b, gx, m), convolve(gx, scale(x, t.tau), m), -1.0), b);
    case Variant::phi1: {
      const Sequence bgx = convolve(b, gx, m);
      Sequence r = add(bgx, convolve(gx, scale(b, t.tau), m), -1.0);
      r = add(r, convolve(gx, scale(bgx, t.tau), m), -1.0);
      return add(r, b);
    }
    case Variant::phi2: {
      const Sequence bgx = convolve(b, gx, m);
      return add(add(bgx, convolve(gx, scale(bgx, t.tau), m), -1.0), b);
    }
    case Variant::phi3:
      return add(convolve(b, gx, m), b);
    case Variant::series:
      break;
  }
  throw DomainError("the series variant has no coefficient map");
}

}  // namespace

FourierPotential::FourierPotential(double period, std::vector<Complex> coefficients)
    : period_(period), order_(0), coefficients_(std::move(coefficients)) {
  if (!std::isfinite(period_) || period_ <= 0.0) throw DomainError("potential period must be positive");
  if (coefficients_.empty() || coefficients_.size() % 2 == 0) {
    throw DomainError("potential needs coefficients for n = -N..N");
  }
  for (const Complex& z : coefficients_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("potential coefficients must be finite");
  }
  order_ = static_cast<int>(coefficients_.size() / 2);
  const int samples = 256 * (2 * order_ + 1);
  for (int s = 0; s < samples; ++s) {
    const double phase = 2.0 * std::numbers::pi * s / samples;
    Complex value(0.0, 0.0);
    for (int n = -order_; n <= order_; ++n) value += coefficient(n) * std::polar(1.0, n * phase);
    sup_norm_ = std::max(sup_norm_, std::abs(value));
  }
}

Complex FourierPotential::coefficient(int n) const {
  if (n < -order_ || n > order_) return {0.0, 0.0};
  return coefficients_[static_cast<std::size_t>(n + order_)];
}

double FourierPotential::coefficient_l1_norm() const noexcept {
  double s = 0.0;
  for (const Complex& z : coefficients_) s += std::abs(z);
  return s;
}

double FourierPotential::frequency(int n) const noexcept { return n * (2.0 * std::numbers::pi / period_); }

LaurentProblem build_laurent(const FourierPotential& v, int truncation) {
  if (truncation < v.order()) {
    throw DomainError("truncation " + std::to_string(truncation) + " is below the potential order " +
                      std::to_string(v.order()));
  }
  const int m = truncation;
  std::vector<double> ev;
  ev.reserve(static_cast<std::size_t>(2 * m + 1));
  for (int n = -m; n <= m; ++n) ev.push_back(v.frequency(n));
  SpectralFrame frame = SpectralFrame::make(std::move(ev));
  const Eigen::Index dim = 2 * m + 1;
  Matrix b = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) b(i, j) = v.coefficient(static_cast<int>(i - j));
  }
  OperatorMatrix bm(frame, std::move(b));
  return LaurentProblem{std::move(frame), std::move(bm), m};
}

bool constant_reduction_regime(const FourierPotential& v, double a) {
  const double ratio = v.period() / std::numbers::pi;
  return a <= (std::numbers::pi / v.period()) * (1.0 + 1e-12) &&
         5.4 * std::sqrt(3.0) * ratio * v.sup_norm_estimate() < 1.0;
}

PeriodicReduction reduce_periodic(const FourierPotential& v, const IterationConfig& config, int truncation) {
  config.validate();
  const LaurentProblem lp = build_laurent(v, truncation);
  PeriodicReduction out;
  out.truncation = truncation;
  out.report = iterate_fixed_point(lp.frame, lp.B, config);
  out.constant_regime = constant_reduction_regime(v, config.a);

  const int m = truncation;
  const MultiplierPair pair(config.kernel, config.a);
  CoefficientTransforms t;
  Sequence b(static_cast<std::size_t>(2 * m + 1));
  for (int n = -m; n <= m; ++n) {
    t.tau.push_back(pair.tau(v.frequency(n)));
    t.omega.push_back(pair.omega(v.frequency(n)));
    b[static_cast<std::size_t>(n + m)] = v.coefficient(n);
  }

  const double norm_b = l1(b);
  Sequence x = b;
  if (norm_b > 0.0) {
    bool converged = false;
    for (int it = 1; it <= config.max_iter; ++it) {
      Sequence next = coefficient_map(out.report.variant, t, b, x, m);
      const double update = l1(add(next, x, -1.0));
      x = std::move(next);
      out.coefficient_iterations = it;
      if (update / norm_b < config.tol) {
        converged = true;
        break;
      }
      if (!std::isfinite(update) || update > 100.0 * norm_b) break;
    }
    if (!converged) {
      throw NonConvergenceError("coefficient iteration did not converge", {});
    }
  }
  out.x_star = x;
  out.v0 = scale(x, t.tau);
  out.c = out.v0[static_cast<std::size_t>(m)];

  // Interior agreement with the Laurent-matrix fixed point.
  double worst = 0.0;
  const int half = m / 2;
  for (int n = -half; n <= half; ++n) {
    for (int k = -half; k <= half; ++k) {
      const auto i = static_cast<Eigen::Index>(n + m);
      const auto j = static_cast<Eigen::Index>(k + m);
      const auto d = static_cast<std::size_t>(n - k + m);
      worst = std::max(worst, std::abs(out.report.X_star(i, j) - out.x_star[d]));
      worst = std::max(worst, std::abs(out.report.JX_star(i, j) - out.v0[d]));
    }
  }
  out.cross_check_error = norm_b > 0.0 ? worst / norm_b : worst;
  if (out.cross_check_error > 1e-9) {
    throw VerificationError("coefficient and matrix fixed points disagree on the interior window (" +
                            std::to_string(out.cross_check_error) + ")");
  }
  return out;
}

SimilarityReport reduce_hypercausal_potential(const FourierPotential& v, int truncation, const IterationConfig& base) {
  bool has_nonpositive = false;
  bool has_nonnegative = false;
  int n_min = std::numeric_limits<int>::max();
  for (int n = -v.order(); n <= v.order(); ++n) {
    if (v.coefficient(n) == Complex(0.0, 0.0)) continue;
    if (n <= 0) has_nonpositive = true;
    if (n >= 0) has_nonnegative = true;
    n_min = std::min(n_min, std::abs(n));
  }
  const bool forward = !has_nonpositive;
  const bool backward = !has_nonnegative;
  if (!forward && !backward) {
    throw StructuralError("potential spectrum is not one-sided: coefficients on both sides of 0 (or at 0)");
  }

  IterationConfig config = base;
  config.variant = Variant::series;
  config.kernel = KernelKind::trapezoid;
  if (n_min != std::numeric_limits<int>::max()) config.a = std::numbers::pi * n_min / v.period();

  const LaurentProblem lp = build_laurent(v, truncation);
  SimilarityReport r = hypercausal_series(lp.frame, lp.B, config);

  std::vector<Complex> expected;
  for (double l : lp.frame.eigenvalues()) expected.emplace_back(l, 0.0);
  const double spectrum_gap = match_spectra(r.spectra.perturbed, expected);
  const double norm_ab = operator_norm(Matrix(lp.frame.diagonal_matrix() - lp.B.entries()), config.norm);
  if (spectrum_gap != 0.0) {
    throw VerificationError("spectrum of A - B differs from the frame by " + std::to_string(spectrum_gap));
  }
  if (!(r.residual_abs < 1e-12 * (1.0 + norm_ab))) {
    throw VerificationError("intertwining residual " + std::to_string(r.residual_abs) + " too large");
  }
  return r;
}

double interior_spectrum_error(const FourierPotential& v, const SimilarityReport& report, Complex c, int truncation) {
  const int half = truncation / 2;
  double worst = 0.0;
  for (int n = -half; n <= half; ++n) {
    const Complex target = v.frequency(n) - c;
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& z : report.spectra.perturbed) best = std::min(best, std::abs(z - target));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace simop
