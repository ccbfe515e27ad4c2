#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "simop/eigen_oracle.hpp"
#include "simop/similarity.hpp"

using namespace simop;
using simop::testing::Gen;
using simop::testing::integer_frame;

namespace {

constexpr double kLow = -0.0024937810560445157;
constexpr double kHigh = 1.0024937810560445;

IterationConfig config(Variant v, double a) {
  IterationConfig c;
  c.variant = v;
  c.a = a;
  return c;
}

double rel_defect(const SimilarityReport& r, const SpectralFrame& f) {
  const SchurTransforms t(f, MultiplierPair(r.kernel, r.a));
  const Matrix next = apply_variant_map(r.variant, t, r.B, r.X_star);
  return operator_norm(Matrix(next - r.X_star), r.norm) / operator_norm(r.B, r.norm);
}

}  // namespace

TEST(Budget, PaperConstants) {
  const auto f = integer_frame(-10, 10);
  Gen g(1);
  const OperatorMatrix b(f, g.matrix_with_norm(21, 0.01));
  const auto budget = contraction_budget(f, config(Variant::phi1, 0.5), b);
  EXPECT_NEAR(budget.j, std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(budget.gamma, 2.7, 1e-15);
  EXPECT_NEAR(budget.lhs, 10.8 * std::sqrt(3.0) * 0.01, 1e-13);
  EXPECT_TRUE(budget.satisfied);

  // Threshold ||B|| < a / (5.4 sqrt 3) for phi1 at general a.
  const double a = 2.0;
  const double edge = a / (5.4 * std::sqrt(3.0));
  const OperatorMatrix below(f, g.matrix_with_norm(21, edge * 0.999));
  const OperatorMatrix above(f, g.matrix_with_norm(21, edge * 1.001));
  EXPECT_TRUE(contraction_budget(f, config(Variant::phi1, a), below).satisfied);
  EXPECT_FALSE(contraction_budget(f, config(Variant::phi1, a), above).satisfied);

  const auto zero = contraction_budget(f, config(Variant::phi, 0.5), OperatorMatrix::zero(f));
  EXPECT_EQ(zero.lhs, 0.0);
  EXPECT_TRUE(zero.satisfied);
}

TEST(Budget, VariantConstantsAndOptions) {
  EXPECT_NEAR(variant_constant(Variant::phi), 3.0 + 2.0 * std::numbers::sqrt2, 1e-15);
  EXPECT_EQ(variant_constant(Variant::phi1), 4.0);
  EXPECT_EQ(variant_constant(Variant::phi2), 3.0);
  EXPECT_EQ(variant_constant(Variant::phi3), 2.0);
  const auto f = integer_frame(0, 4);
  const OperatorMatrix b(f, Matrix::Identity(5, 5) * 0.01);
  auto c = config(Variant::phi1, 0.5);
  c.tight = true;
  EXPECT_EQ(contraction_budget(f, c, b).j, 1.0);
  c.tight = false;
  c.norm = NormKind::frobenius;
  const auto fro = contraction_budget(f, c, b);
  EXPECT_EQ(fro.j, 1.0);
  EXPECT_DOUBLE_EQ(fro.gamma, 1.0);
  // A proper band filter keeps j = sqrt 3 even with the tight flag.
  auto wide = config(Variant::phi, 3.0);
  wide.tight = true;
  EXPECT_NEAR(contraction_budget(f, wide, b).j, std::sqrt(3.0), 1e-15);
}

TEST(FixedPoint, ZeroPerturbation) {
  const auto f = integer_frame(0, 3);
  for (Variant v : {Variant::phi, Variant::phi1, Variant::phi2, Variant::phi3}) {
    const auto r = iterate_fixed_point(f, OperatorMatrix::zero(f), config(v, 0.5));
    EXPECT_EQ(r.iterations, 1);
    EXPECT_EQ(r.X_star.norm(), 0.0);
    EXPECT_EQ((r.U - Matrix::Identity(4, 4)).norm(), 0.0);
    EXPECT_EQ(r.residual_rel, 0.0);
  }
}

TEST(FixedPoint, TwoByTwoPhi1) {
  const auto f = SpectralFrame::make({0.0, 1.0});
  Matrix b(2, 2);
  b << 0.0, 0.05, 0.05, 0.0;
  const auto r = iterate_fixed_point(f, OperatorMatrix(f, b), config(Variant::phi1, 0.5));
  EXPECT_EQ(r.variant, Variant::phi1);
  EXPECT_NEAR(r.JX_star(0, 0).real(), -kLow, 1e-12);
  EXPECT_NEAR(r.JX_star(1, 1).real(), 1.0 - kHigh, 1e-12);
  EXPECT_EQ(r.JX_star(0, 1), Complex(0.0, 0.0));
  EXPECT_LT(match_spectra(r.spectra.perturbed, {kLow, kHigh}), 1e-14);
  EXPECT_LT(r.spectra.max_match_distance, 1e-14);
  EXPECT_LT(r.residual_rel, 1e-15);
  ASSERT_TRUE(r.ball_bound.has_value());
  EXPECT_DOUBLE_EQ(*r.ball_bound, 0.15);
  EXPECT_LE(r.ball_radius, 0.15);
  EXPECT_LT(rel_defect(r, f), 10 * 1e-12);
}

TEST(FixedPoint, Phi1AndPhi2AgreeWhenJBVanishes) {
  const auto f = integer_frame(-5, 5);
  Gen g(2);
  for (int k = 0; k < 10; ++k) {
    Matrix b = g.matrix_with_norm(11, 0.02);
    b.diagonal().setZero();
    const OperatorMatrix bm(f, b);
    const auto r1 = iterate_fixed_point(f, bm, config(Variant::phi1, 0.5));
    const auto r2 = iterate_fixed_point(f, bm, config(Variant::phi2, 0.5));
    EXPECT_LT(operator_norm(Matrix(r1.JX_star - r2.JX_star), NormKind::spectral), 1e-10 * 0.02);
    EXPECT_LT(r2.residual_rel, 1e-12);
  }
}

TEST(FixedPoint, FixedPointPropertyAllVariants) {
  Gen g(3);
  const auto f = integer_frame(-6, 6);
  for (int k = 0; k < 20; ++k) {
    Matrix b = g.matrix_with_norm(13, 0.015);
    b.diagonal().setZero();
    for (Variant v : {Variant::phi, Variant::phi1, Variant::phi2}) {
      auto c = config(v, 0.5);
      c.force = true;
      const auto r = iterate_fixed_point(f, OperatorMatrix(f, b), c);
      ASSERT_LT(rel_defect(r, f), 10 * c.tol);
      ASSERT_LT(r.spectra.max_match_distance, 1e-8 * (1.0 + 7.0));
      // 2a <= d: J is a pinching, so JX* is diagonal.
      const Matrix off = r.JX_star - Matrix(r.JX_star.diagonal().asDiagonal());
      ASSERT_EQ(off.norm(), 0.0);
    }
  }
}

TEST(FixedPoint, Phi3OnOneSidedFarSupport) {
  const auto f = integer_frame(0, 9);
  Gen g(4);
  Matrix b = Matrix::Zero(10, 10);
  for (int i = 2; i < 10; ++i) {
    for (int j = 0; j + 2 <= i; ++j) b(i, j) = g.complex_normal();
  }
  b *= 0.05 / operator_norm(b, NormKind::spectral);
  const auto r = iterate_fixed_point(f, OperatorMatrix(f, b), config(Variant::phi3, 0.5));
  EXPECT_EQ(r.JX_star.norm(), 0.0);
  EXPECT_LT(r.residual_rel, 1e-13);
  EXPECT_LT(r.spectra.max_match_distance, 1e-12);
  EXPECT_TRUE(r.ball_ok);
}

TEST(FixedPoint, StructuralPreconditions) {
  Gen g(5);
  const auto f = integer_frame(0, 5);
  const OperatorMatrix b(f, g.matrix_with_norm(6, 0.001));
  EXPECT_THROW(iterate_fixed_point(f, b, config(Variant::phi1, 0.7)), StructuralError);
  EXPECT_THROW(iterate_fixed_point(f, b, config(Variant::phi2, 0.5)), StructuralError);
  EXPECT_THROW(iterate_fixed_point(f, b, config(Variant::phi3, 0.5)), StructuralError);
  auto tri = config(Variant::phi, 2.0);
  tri.kernel = KernelKind::triangle;
  const auto close = SpectralFrame::make({0.0, 0.5, 3.0});
  EXPECT_THROW(iterate_fixed_point(close, OperatorMatrix(close, g.matrix_with_norm(3, 0.001)), tri),
               StructuralError);
}

TEST(FixedPoint, FallbackToPhiWhenBilinearConditionFails) {
  // Integers with a = 1: gap condition holds, but Gamma(X) at offset 2 times J(Y) at
  // offset -1 lands on offset 1, which J keeps.
  const auto f = integer_frame(0, 4);
  Gen g(6);
  const OperatorMatrix b(f, g.matrix_with_norm(5, 0.002));
  const auto r = iterate_fixed_point(f, b, config(Variant::phi1, 1.0));
  EXPECT_EQ(r.requested_variant, Variant::phi1);
  EXPECT_EQ(r.variant, Variant::phi);
  EXPECT_FALSE(r.notes.empty());
  EXPECT_LT(r.residual_rel, 1e-12);
}

TEST(FixedPoint, BudgetFailureAndForce) {
  const auto f = integer_frame(-10, 10);
  Gen g(7);
  const OperatorMatrix b(f, g.matrix_with_norm(21, 2.0 / (10.8 * std::sqrt(3.0))));
  try {
    (void)iterate_fixed_point(f, b, config(Variant::phi1, 0.5));
    FAIL() << "expected a budget failure";
  } catch (const BudgetError& e) {
    EXPECT_NEAR(e.budget().lhs, 2.0, 1e-12);
    EXPECT_FALSE(e.budget().satisfied);
  }
  auto forced = config(Variant::phi1, 0.5);
  forced.force = true;
  try {
    const auto r = iterate_fixed_point(f, b, forced);
    EXPECT_LT(r.residual_rel, 1e-6);
  } catch (const NonConvergenceError& e) {
    EXPECT_FALSE(e.log().empty());
  }
}

TEST(FixedPoint, DivergenceIsReported) {
  const auto f = integer_frame(0, 3);
  Matrix b = Matrix::Ones(4, 4) * 5.0;
  auto c = config(Variant::phi, 0.5);
  c.force = true;
  EXPECT_THROW(iterate_fixed_point(f, OperatorMatrix(f, b), c), NonConvergenceError);
  c.max_iter = 1;
  Gen g(8);
  EXPECT_THROW(iterate_fixed_point(f, OperatorMatrix(f, g.matrix_with_norm(4, 0.01)), c), NonConvergenceError);
}

TEST(FixedPoint, ContractionRateWithinBudget) {
  const auto f = integer_frame(-8, 8);
  Gen g(9);
  for (int k = 0; k < 5; ++k) {
    const OperatorMatrix b(f, g.matrix_with_norm(17, 0.012));
    const auto r = iterate_fixed_point(f, b, config(Variant::phi, 0.5));
    const auto& log = r.convergence_log;
    if (log.size() < 3) continue;
    const double q = r.budget.lhs;
    const double ratio = std::pow(log.back() / log[1], 1.0 / static_cast<double>(log.size() - 2));
    EXPECT_LE(ratio, q + 0.05);
  }
}

TEST(FixedPoint, InvalidConfig) {
  const auto f = integer_frame(0, 1);
  auto c = config(Variant::phi, 0.0);
  EXPECT_THROW(iterate_fixed_point(f, OperatorMatrix::zero(f), c), DomainError);
  c = config(Variant::phi, 1.0);
  c.tol = 0.0;
  EXPECT_THROW(iterate_fixed_point(f, OperatorMatrix::zero(f), c), DomainError);
  c.tol = 1e-12;
  c.max_iter = 0;
  EXPECT_THROW(iterate_fixed_point(f, OperatorMatrix::zero(f), c), DomainError);
}

TEST(Series, TwoByTwo) {
  const auto f = SpectralFrame::make({0.0, 1.0});
  const double beta = 0.7;
  Matrix b = Matrix::Zero(2, 2);
  b(1, 0) = beta;
  const auto r = hypercausal_series(f, OperatorMatrix(f, b), config(Variant::series, 0.5));
  EXPECT_EQ((r.X_star - b).norm(), 0.0);
  EXPECT_EQ(r.U(1, 0), Complex(beta, 0.0));
  EXPECT_EQ(r.U(0, 0), Complex(1.0, 0.0));
  EXPECT_EQ(r.U(0, 1), Complex(0.0, 0.0));
  EXPECT_EQ(r.residual_abs, 0.0);
  EXPECT_EQ(r.JX_star.norm(), 0.0);
}

TEST(Series, FactorialBoundAndTermination) {
  Gen g(10);
  for (int n : {4, 12, 24}) {
    const auto f = integer_frame(0, n - 1);
    const OperatorMatrix b(f, g.strictly_lower(n, 3.0));
    const auto r = hypercausal_series(f, b, config(Variant::series, 0.5));
    EXPECT_LE(r.iterations, n);
    for (const auto& t : r.terms) EXPECT_TRUE(t.within_bound) << "n=" << t.n;
    std::vector<Complex> frame_ev(f.eigenvalues().begin(), f.eigenvalues().end());
    EXPECT_EQ(match_spectra(r.spectra.perturbed, frame_ev), 0.0);
    EXPECT_LT(r.residual_abs, 1e-12 * (1.0 + r.residual_abs / r.residual_rel));
  }
}

TEST(Series, AnticausalMirrorAndRejection) {
  Gen g(11);
  const auto f = integer_frame(0, 7);
  const Matrix up = g.strictly_lower(8, 2.0).adjoint();
  const auto r = hypercausal_series(f, OperatorMatrix(f, up), config(Variant::series, 0.5));
  EXPECT_LT(r.residual_rel, 1e-12);
  EXPECT_THROW(hypercausal_series(f, OperatorMatrix(f, g.matrix(8)), config(Variant::series, 0.5)), StructuralError);
  // One-sided but closer than 2a.
  EXPECT_THROW(hypercausal_series(f, OperatorMatrix(f, g.strictly_lower(8, 1.0)), config(Variant::series, 1.0)),
               StructuralError);
  EXPECT_EQ(iterate_fixed_point(f, OperatorMatrix(f, g.strictly_lower(8, 1.0)), config(Variant::series, 0.5)).variant,
            Variant::series);
}

TEST(Intertwiner, Examples) {
  auto w = build_intertwiner(Matrix::Zero(3, 3));
  EXPECT_EQ((w.U - Matrix::Identity(3, 3)).norm(), 0.0);
  EXPECT_EQ((w.U_inverse - Matrix::Identity(3, 3)).norm(), 0.0);
  EXPECT_NEAR(w.condition_number, 1.0, 1e-15);

  Matrix n = Matrix::Zero(2, 2);
  n(1, 0) = 3.5;
  w = build_intertwiner(n);
  EXPECT_EQ((w.U_inverse - (Matrix::Identity(2, 2) - n)).norm(), 0.0);

  Gen g(12);
  for (int k = 0; k < 10; ++k) {
    w = build_intertwiner(g.matrix_with_norm(8, 0.5));
    ASSERT_TRUE(w.neumann_discrepancy.has_value());
    EXPECT_LT(*w.neumann_discrepancy, 1e-12);
  }
  EXPECT_THROW(build_intertwiner(-Matrix::Identity(2, 2)), SingularityError);
}

TEST(Verify, ZeroAndPerturbed) {
  const auto f = integer_frame(-3, 3);
  const Matrix z = Matrix::Zero(7, 7);
  const Matrix id = Matrix::Identity(7, 7);
  auto c = verify_similarity(f, z, z, id);
  EXPECT_EQ(c.residual_rel, 0.0);
  EXPECT_EQ(c.spectra.max_match_distance, 0.0);

  Gen g(13);
  Matrix b = g.matrix_with_norm(7, 0.01);
  b.diagonal().setZero();
  const auto r = iterate_fixed_point(f, OperatorMatrix(f, b), config(Variant::phi1, 0.5));
  Matrix bad = r.U;
  bad(2, 4) += 0.1;
  c = verify_similarity(f, b, r.JX_star, bad);
  EXPECT_GT(c.residual_rel, 1e-3);
}
