#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "hspline/errors.hpp"
#include "hspline/interpolator.hpp"

using namespace hspline;

namespace {

const KernelParams kP22(2, 2, 1.0);
// Smaller shift keeps the larger systems well away from the residual floor.
const KernelParams kSharp(2, 2, 0.2);

PointSet halton(int count) { return generate_points(CubeDomain::unit(2), PointKind::Halton, count, 0); }

Eigen::VectorXd sample(const PointSet& X, double (*f)(double, double)) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(X.size()));
  for (std::size_t i = 0; i < X.size(); ++i) v(static_cast<Eigen::Index>(i)) = f(X.point(i)(0), X.point(i)(1));
  return v;
}

double linear(double x, double y) { return 1.0 + 2.0 * x - y; }
double smooth(double x, double y) { return std::sin(3.0 * x) * std::cos(2.0 * y) + x * x; }
double other(double x, double y) { return std::exp(-x * y) - 0.3 * y; }

}  // namespace

TEST(Fit, ReproducesLinearPolynomial) {
  const PointSet X((Eigen::MatrixXd(6, 2) << 0.1, 0.2, 0.9, 0.15, 0.4, 0.8, 0.7, 0.6, 0.25, 0.55, 0.6, 0.35).finished());
  const auto model = fit(kP22, X, sample(X, linear));
  EXPECT_LE(model.coefficients().cwiseAbs().maxCoeff(), 1e-8);
  ASSERT_EQ(model.poly_coeffs().size(), 3);
  EXPECT_NEAR(model.poly_coeffs()(0), 1.0, 1e-8);
  EXPECT_NEAR(model.poly_coeffs()(1), 2.0, 1e-8);
  EXPECT_NEAR(model.poly_coeffs()(2), -1.0, 1e-8);
}

TEST(Fit, SquarePolynomialBlock) {
  const PointSet X((Eigen::MatrixXd(3, 2) << 0, 0, 1, 0, 0, 1).finished());
  const auto model = fit(kP22, X, sample(X, linear));
  EXPECT_NEAR(model.poly_coeffs()(1), 2.0, 1e-8);
  const std::vector<double> probe{0.3, 0.7};
  EXPECT_NEAR(model(probe), linear(0.3, 0.7), 1e-8);
}

TEST(Fit, CollinearPointsAreNotUnisolvent) {
  const PointSet X((Eigen::MatrixXd(3, 2) << 0, 0, 0.5, 0.5, 1, 1).finished());
  try {
    fit(kP22, X, Eigen::Vector3d(1, 2, 3));
    FAIL() << "expected UnisolvencyError";
  } catch (const UnisolvencyError& e) {
    EXPECT_EQ(e.degree(), 1);
  }
}

TEST(Fit, SizeMismatch) {
  EXPECT_THROW(fit(kP22, halton(10), Eigen::VectorXd::Zero(9)), InvalidArgument);
}

TEST(Fit, NodeAndMomentInvariants) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 10 + static_cast<int>(u(rng) * 190.0);
    const KernelParams p(2, trial % 2 ? 4 : 2, 0.1 + 0.4 * u(rng));
    Eigen::MatrixXd pts(N, 2);
    for (auto& v : pts.reshaped()) v = u(rng);
    const PointSet X(pts);
    // Random smooth data: a few plane waves.
    Eigen::VectorXd f = Eigen::VectorXd::Zero(N);
    for (int wave = 0; wave < 3; ++wave) {
      const double a = normal(rng), kx = 3.0 * normal(rng), ky = 3.0 * normal(rng), phase = 6.0 * u(rng);
      for (int i = 0; i < N; ++i) f(i) += a * std::sin(kx * pts(i, 0) + ky * pts(i, 1) + phase);
    }
    const auto model = fit(p, X, f, {.force = true});
    const Eigen::VectorXd s = evaluate(model, X);
    EXPECT_LE((s - f).cwiseAbs().maxCoeff(), 1e-8 * (1.0 + f.cwiseAbs().maxCoeff()));
    const Eigen::MatrixXd P = poly_matrix(model.basis(), X);
    EXPECT_LE((P.transpose() * model.coefficients()).cwiseAbs().maxCoeff(),
              1e-8 * (1.0 + model.coefficients().cwiseAbs().maxCoeff()));
    EXPECT_GT(model.diagnostics().condition, 1.0);
  }
}

TEST(Fit, ConditionWarningAndFailure) {
  // 100 nodes with c = 1: condition near 1e16, residuals still near 1e-9.
  const auto X = halton(100);
  const KernelParams& flat = kP22;
  const Eigen::VectorXd f = sample(X, smooth);
  EXPECT_THROW(fit(flat, X, f), IllConditionedError);
  try {
    fit(flat, X, f);
  } catch (const IllConditionedError& e) {
    EXPECT_GT(e.condition(), kConditionFail);
  }
  const auto model = fit(flat, X, f, {.force = true});
  EXPECT_TRUE(model.diagnostics().forced);
  EXPECT_TRUE(model.diagnostics().condition_warning);
}

TEST(Evaluate, CentersAndPolynomialPart) {
  const auto X = halton(40);
  const Eigen::VectorXd f = sample(X, smooth);
  const auto model = fit(kP22, X, f);
  EXPECT_LE((evaluate(model, X) - f).cwiseAbs().maxCoeff(), 1e-8);

  const InterpolationModel poly(kP22, X, Eigen::VectorXd::Zero(40), Eigen::Vector3d(0.5, -1.0, 3.0), {});
  const std::vector<double> x{0.2, 0.9};
  EXPECT_EQ(poly(x), 0.5 - 0.2 + 2.7);

  const PointSet wrong = generate_points(CubeDomain::unit(3), PointKind::Halton, 4, 0);
  EXPECT_THROW(evaluate(model, wrong), InvalidArgument);
}

TEST(Evaluate, Linearity) {
  const auto X = halton(60);
  const auto grid = generate_points(CubeDomain::unit(2), PointKind::Grid, 0.05, 0);
  const Eigen::VectorXd f = sample(X, smooth), g = sample(X, other);
  const Eigen::VectorXd sf = evaluate(fit(kSharp, X, f), grid);
  const Eigen::VectorXd sg = evaluate(fit(kSharp, X, g), grid);
  const Eigen::VectorXd sfg = evaluate(fit(kSharp, X, f + g), grid);
  EXPECT_LE((sfg - sf - sg).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Evaluate, PermutationInvariance) {
  const auto X = halton(50);
  const Eigen::VectorXd f = sample(X, smooth);
  std::vector<std::size_t> order(50);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(1));
  Eigen::VectorXd fp(50);
  for (std::size_t i = 0; i < 50; ++i) fp(static_cast<Eigen::Index>(i)) = f(static_cast<Eigen::Index>(order[i]));
  const auto grid = generate_points(CubeDomain::unit(2), PointKind::Grid, 0.1, 0);
  const Eigen::VectorXd a = evaluate(fit(kSharp, X, f), grid);
  const Eigen::VectorXd b = evaluate(fit(kSharp, X.permuted(order), fp), grid);
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Evaluate, RefitIsAProjection) {
  const auto X = halton(30);
  const auto model = fit(kSharp, X, sample(X, other));
  const auto again = fit(kSharp, X, evaluate(model, X));
  EXPECT_LE((again.coefficients() - model.coefficients()).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE((again.poly_coeffs() - model.poly_coeffs()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(NativeFunction, CheckerboardDirection) {
  const PointSet Y((Eigen::MatrixXd(4, 2) << 1, 1, 1, -1, -1, 1, -1, -1).finished());
  const Eigen::VectorXd c = make_native_test_function(kP22, Y, 3);
  // The constrained space is one-dimensional, so c = +-(1,-1,-1,1)/2.
  const Eigen::Vector4d dir(0.5, -0.5, -0.5, 0.5);
  EXPECT_NEAR(std::abs(c.dot(dir)), 1.0, 1e-12);
  EXPECT_NEAR(c.norm(), 1.0, 1e-14);

  // Quadratic form by independent direct summation.
  double q = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double r2 = std::pow(Y.point(i)(0) - Y.point(j)(0), 2) + std::pow(Y.point(i)(1) - Y.point(j)(1), 2);
      q += c(i) * c(j) * (r2 + 1.0) * 0.5 * std::log(r2 + 1.0);
    }
  EXPECT_NEAR(semi_norm(kP22, Y, c), std::sqrt(q), 1e-13);
}

TEST(NativeFunction, ConstraintsAndSeeds) {
  const auto Y = halton(15);
  for (const KernelParams& p : {kP22, KernelParams(2, 4, 0.7)}) {
    const Eigen::VectorXd a = make_native_test_function(p, Y, 1);
    const Eigen::VectorXd b = make_native_test_function(p, Y, 2);
    const PolynomialBasis basis(2, p.poly_degree());
    const Eigen::MatrixXd P = poly_matrix(basis, Y);
    EXPECT_LE((P.transpose() * a).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((P.transpose() * b).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GT((a - b).norm(), 1e-3);
  }
  EXPECT_THROW(make_native_test_function(kP22, halton(3), 1), PreconditionError);
}

TEST(SemiNorm, ZeroHomogeneityAndPrecondition) {
  const auto Y = halton(12);
  EXPECT_EQ(semi_norm(kP22, Y, Eigen::VectorXd::Zero(12)), 0.0);
  const Eigen::VectorXd c = make_native_test_function(kP22, Y, 4);
  EXPECT_NEAR(semi_norm(kP22, Y, 2.0 * c), 2.0 * semi_norm(kP22, Y, c), 1e-14);
  EXPECT_THROW(semi_norm(kP22, Y, Eigen::VectorXd::Ones(12)), PreconditionError);
}

TEST(SemiNorm, QuadraticFormNonnegativeOnConstrainedVectors) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 8 + trial % 20;
    Eigen::MatrixXd pts(N, 2);
    for (auto& v : pts.reshaped()) v = u(rng);
    const PointSet Y(pts);
    const KernelParams p(2, 2 + 2 * (trial % 3), 0.3 + 0.02 * trial);
    if (!is_determining(Y, p.poly_degree()) || static_cast<std::size_t>(N) <= polynomial_space_dim(2, p.poly_degree()))
      continue;
    const Eigen::VectorXd c = make_native_test_function(p, Y, static_cast<std::uint64_t>(trial));
    const Eigen::MatrixXd A = kernel_matrix(p, Y, Y);
    EXPECT_GE(c.dot(A * c), -1e-10 * c.squaredNorm() * A.cwiseAbs().maxCoeff());
    EXPECT_NO_THROW(semi_norm(p, Y, c));
  }
}

TEST(SemiNorm, InterpolantHasMinimalNorm) {
  const auto X = halton(80);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    // Y is a subset of X.
    Eigen::MatrixXd ypts = X.coords().topRows(10 + static_cast<Eigen::Index>(seed));
    const PointSet Y(ypts);
    const Eigen::VectorXd cy = make_native_test_function(kP22, Y, seed);
    const Eigen::VectorXd f = kernel_matrix(kP22, X, Y) * cy;
    const auto model = fit(kP22, X, f);
    const double ns = semi_norm(kP22, X, model.coefficients());
    EXPECT_LE(ns, semi_norm(kP22, Y, cy) + 1e-8);
  }
}
