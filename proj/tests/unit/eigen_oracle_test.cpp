#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "simop/eigen_oracle.hpp"
#include "simop/errors.hpp"

using namespace simop;
using simop::testing::Gen;

namespace {
constexpr double kLow = -0.0024937810560445157;  // (1 - sqrt(1.01)) / 2
constexpr double kHigh = 1.0024937810560445;
}  // namespace

TEST(DenseSpectrum, Diagonal) {
  Matrix d = Matrix::Zero(2, 2);
  d(1, 1) = 1.0;
  const auto s = dense_spectrum(d);
  EXPECT_EQ(match_spectra(s.eigenvalues, {0.0, 1.0}), 0.0);
}

TEST(DenseSpectrum, TwoByTwoQuadratic) {
  Matrix m(2, 2);
  m << 0.0, -0.05, -0.05, 1.0;
  const auto s = dense_spectrum(m);
  EXPECT_LT(match_spectra(s.eigenvalues, {kLow, kHigh}), 1e-15);
  EXPECT_LT(s.backward_error, 1e-14);
}

TEST(DenseSpectrum, CompanionOfCubeRoots) {
  Matrix c = Matrix::Zero(3, 3);
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  c(0, 2) = 1.0;
  const auto s = dense_spectrum(c);
  std::vector<Complex> roots;
  for (int k = 0; k < 3; ++k) roots.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0));
  EXPECT_LT(match_spectra(s.eigenvalues, roots), 1e-13);
}

TEST(DenseSpectrum, TriangularIsExact) {
  Gen g(1);
  const int n = 20;
  Matrix x = g.matrix(n).triangularView<Eigen::StrictlyLower>();
  std::vector<Complex> expected;
  for (int k = 0; k < n; ++k) {
    x(k, k) = k - 10.0;
    expected.emplace_back(k - 10.0, 0.0);
  }
  EXPECT_EQ(match_spectra(dense_spectrum(x).eigenvalues, expected), 0.0);
  EXPECT_EQ(match_spectra(dense_spectrum(Matrix(x.transpose())).eigenvalues, expected), 0.0);
}

TEST(DenseSpectrum, RejectsNonFinite) {
  Matrix x = Matrix::Identity(2, 2);
  x(0, 1) = Complex(INFINITY, 0.0);
  EXPECT_THROW(dense_spectrum(x), DomainError);
}

TEST(MatchSpectra, Examples) {
  const std::vector<Complex> s{{1.0, 2.0}, {-3.0, 0.5}, {0.0, 0.0}, {4.0, -1.0}};
  EXPECT_EQ(match_spectra(s, s), 0.0);
  const std::vector<Complex> perm{s[2], s[0], s[3], s[1]};
  EXPECT_EQ(match_spectra(s, perm), 0.0);
  std::vector<Complex> shifted = s;
  for (auto& z : shifted) z += 1e-3;
  EXPECT_NEAR(match_spectra(s, shifted), 1e-3, 1e-12);
  EXPECT_THROW(match_spectra(s, {1.0}), DomainError);
}

TEST(MatchSpectra, GreedyFallbackOnNearTies) {
  // Real parts tie after rounding, imaginary order flips: sorted pairing is poor, greedy is exact.
  const std::vector<Complex> s1{{0.0, 1.0}, {1e-10, -1.0}};
  const std::vector<Complex> s2{{4e-10, -1.0}, {-4e-10, 1.0}};
  EXPECT_LT(match_spectra(s1, s2), 1e-9);
}

TEST(DenseSpectrumProperty, SimilarityInvariance) {
  Gen g(2);
  int done = 0;
  while (done < 30) {
    const int n = g.integer(2, 16);
    const Matrix x = g.matrix(n);
    const Matrix u = Matrix::Identity(n, n) + 0.3 * g.matrix_with_norm(n, 1.0);
    Eigen::JacobiSVD<Matrix> svd(u);
    const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    if (cond >= 100.0) continue;
    ++done;
    const Matrix y = u.inverse() * x * u;
    const double tol = 1e-8 * (1.0 + operator_norm(x, NormKind::spectral));
    ASSERT_LT(match_spectra(dense_spectrum(x).eigenvalues, dense_spectrum(y).eigenvalues), tol);
  }
}
