#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "hspline/geometry.hpp"
#include "hspline/kernel.hpp"
#include "hspline/polynomials.hpp"

namespace hspline {

struct FitOptions {
  // Accept systems whose condition estimate exceeds kConditionFail.
  bool force = false;
};

struct FitDiagnostics {
  double condition = 0.0;          // condition estimate of the full saddle-point matrix
  double max_node_residual = 0.0;  // max_i |s(x_i) - f_i|
  double max_moment_residual = 0.0;  // |P^T c|_inf
  bool condition_warning = false;  // condition above kConditionWarn
  bool forced = false;             // condition above kConditionFail, accepted because of FitOptions::force
};

inline constexpr double kConditionWarn = 1e12;
inline constexpr double kConditionFail = 1e15;
inline constexpr double kResidualTolerance = 1e-8;
// Centers up to which the condition number comes from a full SVD.
inline constexpr std::size_t kSvdConditionLimit = 500;

// s(x) = p(x) + sum_j c_j h(x - x_j) with p of degree <= m - 1 in the graded-lex basis.
class InterpolationModel {
 public:
  InterpolationModel(KernelParams params, PointSet centers, Eigen::VectorXd coefficients,
                     Eigen::VectorXd poly_coeffs, FitDiagnostics diagnostics);

  const KernelParams& params() const noexcept { return params_; }
  const PointSet& centers() const noexcept { return centers_; }
  const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
  const Eigen::VectorXd& poly_coeffs() const noexcept { return poly_coeffs_; }
  const PolynomialBasis& basis() const noexcept { return basis_; }
  const FitDiagnostics& diagnostics() const noexcept { return diagnostics_; }

  double operator()(std::span<const double> x) const;

 private:
  KernelParams params_;
  PointSet centers_;
  Eigen::VectorXd coefficients_;
  Eigen::VectorXd poly_coeffs_;
  PolynomialBasis basis_;
  FitDiagnostics diagnostics_;
};

// A_ij = h(x_i - y_j).
Eigen::MatrixXd kernel_matrix(const KernelParams& params, const PointSet& rows, const PointSet& cols);

// Solves [[A, P], [P^T, 0]] [c; a] = [f; 0].
//
// Throws UnisolvencyError when the centers are not determining for degree m - 1,
// IllConditionedError when the factorization breaks down, a residual invariant
// exceeds 1e-8 relative, or the condition estimate exceeds 1e15 without force.
InterpolationModel fit(const KernelParams& params, const PointSet& centers, const Eigen::VectorXd& values,
                       FitOptions options = {});

Eigen::VectorXd evaluate(const InterpolationModel& model, const PointSet& points);

// Random unit vector c with sum_j c_j q(y_j) = 0 for every q of degree <= m - 1,
// so that sum_j c_j h(. - y_j) lies in the native space of h.
Eigen::VectorXd make_native_test_function(const KernelParams& params, const PointSet& centers, std::uint64_t seed);

// sqrt(c^T A c) for moment-constrained c. The quadratic form is clamped at zero when
// it is negative by less than 1e-10 * |c|^2 * max|A|; beyond that CpdViolationError.
double semi_norm(const KernelParams& params, const PointSet& centers, const Eigen::VectorXd& coefficients);

}  // namespace hspline
