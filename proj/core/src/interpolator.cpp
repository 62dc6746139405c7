#include "hspline/interpolator.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/QR>

#include "hspline/errors.hpp"
#include "symmetric_solver.hpp"

namespace hspline {

InterpolationModel::InterpolationModel(KernelParams params, PointSet centers, Eigen::VectorXd coefficients,
                                       Eigen::VectorXd poly_coeffs, FitDiagnostics diagnostics)
    : params_(params),
      centers_(std::move(centers)),
      coefficients_(std::move(coefficients)),
      poly_coeffs_(std::move(poly_coeffs)),
      basis_(params.n(), params.poly_degree()),
      diagnostics_(diagnostics) {
  if (centers_.dim() != params_.n()) throw InvalidArgument("InterpolationModel: center dimension mismatch");
  if (static_cast<std::size_t>(coefficients_.size()) != centers_.size())
    throw InvalidArgument("InterpolationModel: one kernel coefficient per center required");
  if (static_cast<std::size_t>(poly_coeffs_.size()) != basis_.size())
    throw InvalidArgument("InterpolationModel: polynomial coefficient count mismatch");
}

double InterpolationModel::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != params_.n()) throw InvalidArgument("evaluate: dimension mismatch");
  double sum = basis_.evaluate(x).dot(poly_coeffs_);
  const Eigen::MatrixXd& X = centers_.coords();
  for (Eigen::Index j = 0; j < X.rows(); ++j) {
    double r2 = 0.0;
    for (int d = 0; d < params_.n(); ++d) {
      const double diff = x[d] - X(j, d);
      r2 += diff * diff;
    }
    sum += coefficients_[j] * kernel_radial(params_, r2);
  }
  return sum;
}

Eigen::MatrixXd kernel_matrix(const KernelParams& params, const PointSet& rows, const PointSet& cols) {
  if (rows.dim() != params.n() || cols.dim() != params.n())
    throw InvalidArgument("kernel_matrix: point dimension does not match kernel dimension");
  const Eigen::MatrixXd& X = rows.coords();
  const Eigen::MatrixXd& Y = cols.coords();
  Eigen::MatrixXd A(X.rows(), Y.rows());
  for (Eigen::Index j = 0; j < Y.rows(); ++j)
    for (Eigen::Index i = 0; i < X.rows(); ++i) A(i, j) = kernel_radial(params, (X.row(i) - Y.row(j)).squaredNorm());
  return A;
}

InterpolationModel fit(const KernelParams& params, const PointSet& centers, const Eigen::VectorXd& values,
                       FitOptions options) {
  if (centers.dim() != params.n()) throw InvalidArgument("fit: center dimension does not match n");
  if (static_cast<std::size_t>(values.size()) != centers.size())
    throw InvalidArgument("fit: " + std::to_string(values.size()) + " values for " + std::to_string(centers.size()) +
                          " centers");
  if (!values.allFinite()) throw InvalidArgument("fit: non-finite data value");

  const int degree = params.poly_degree();
  if (!is_determining(centers, degree))
    throw UnisolvencyError("fit: centers are not a determining set for polynomials of degree " +
                               std::to_string(degree),
                           degree);

  const PolynomialBasis basis(params.n(), degree);
  const auto N = static_cast<Eigen::Index>(centers.size());
  const auto Q = static_cast<Eigen::Index>(basis.size());
  const Eigen::MatrixXd P = poly_matrix(basis, centers);

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + Q, N + Q);
  M.topLeftCorner(N, N) = kernel_matrix(params, centers, centers);
  M.topRightCorner(N, Q) = P;
  M.bottomLeftCorner(Q, N) = P.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + Q);
  rhs.head(N) = values;

  const auto solved =
      detail::solve_symmetric_indefinite(M, rhs, static_cast<Eigen::Index>(kSvdConditionLimit) + Q);
  if (solved.singular) throw IllConditionedError("fit: symmetric factorization broke down (zero pivot)", solved.condition);

  Eigen::VectorXd c = solved.solution.head(N);
  Eigen::VectorXd a = solved.solution.tail(Q);

  FitDiagnostics diag;
  diag.condition = solved.condition;
  diag.max_node_residual = (M.topLeftCorner(N, N) * c + P * a - values).cwiseAbs().maxCoeff();
  diag.max_moment_residual = Q > 0 ? (P.transpose() * c).cwiseAbs().maxCoeff() : 0.0;
  diag.condition_warning = solved.condition > kConditionWarn;

  const double node_tol = kResidualTolerance * (1.0 + values.cwiseAbs().maxCoeff());
  const double moment_tol = kResidualTolerance * (1.0 + c.cwiseAbs().maxCoeff());
  if (!c.allFinite() || !a.allFinite() || !(diag.max_node_residual <= node_tol) ||
      !(diag.max_moment_residual <= moment_tol)) {
    throw IllConditionedError("fit: residual check failed (node residual " + std::to_string(diag.max_node_residual) +
                                  ", moment residual " + std::to_string(diag.max_moment_residual) +
                                  ", condition estimate " + std::to_string(solved.condition) + ")",
                              solved.condition);
  }
  if (solved.condition > kConditionFail) {
    if (!options.force)
      throw IllConditionedError("fit: condition estimate " + std::to_string(solved.condition) + " exceeds 1e15",
                                solved.condition);
    diag.forced = true;
  }
  return InterpolationModel(params, centers, std::move(c), std::move(a), diag);
}

Eigen::VectorXd evaluate(const InterpolationModel& model, const PointSet& points) {
  if (points.dim() != model.params().n()) throw InvalidArgument("evaluate: point dimension mismatch");
  Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
  Eigen::VectorXd x(points.dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    x = points.point(i).transpose();
    out[static_cast<Eigen::Index>(i)] = model(std::span<const double>(x.data(), x.size()));
  }
  return out;
}

Eigen::VectorXd make_native_test_function(const KernelParams& params, const PointSet& centers, std::uint64_t seed) {
  if (centers.dim() != params.n()) throw InvalidArgument("make_native_test_function: dimension mismatch");
  const PolynomialBasis basis(params.n(), params.poly_degree());
  if (centers.size() <= basis.size())
    throw PreconditionError("make_native_test_function: need more than " + std::to_string(basis.size()) +
                            " centers for a nontrivial constrained vector");
  if (!is_determining(centers, params.poly_degree()))
    throw UnisolvencyError("make_native_test_function: centers are not determining", params.poly_degree());

  const Eigen::MatrixXd P = poly_matrix(basis, centers);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(P);
  const Eigen::MatrixXd Qthin = qr.householderQ() * Eigen::MatrixXd::Identity(P.rows(), P.cols());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd c(P.rows());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = normal(rng);

  // Project twice so the moment residual sits at round-off level.
  for (int pass = 0; pass < 2; ++pass) c -= Qthin * (Qthin.transpose() * c);
  const double norm = c.norm();
  if (!(norm > 0.0)) throw Error("make_native_test_function: projection vanished");
  return c / norm;
}

double semi_norm(const KernelParams& params, const PointSet& centers, const Eigen::VectorXd& coefficients) {
  if (centers.dim() != params.n()) throw InvalidArgument("semi_norm: dimension mismatch");
  if (static_cast<std::size_t>(coefficients.size()) != centers.size())
    throw InvalidArgument("semi_norm: one coefficient per center required");
  if (centers.empty()) return 0.0;

  const PolynomialBasis basis(params.n(), params.poly_degree());
  const Eigen::MatrixXd P = poly_matrix(basis, centers);
  const double moment = (P.transpose() * coefficients).cwiseAbs().maxCoeff();
  if (moment > kResidualTolerance * (1.0 + coefficients.cwiseAbs().maxCoeff()))
    throw PreconditionError("semi_norm: coefficients violate the moment conditions (|P^T c| = " +
                            std::to_string(moment) + ")");

  const Eigen::MatrixXd A = kernel_matrix(params, centers, centers);
  const double form = coefficients.dot(A * coefficients);
  if (form >= 0.0) return std::sqrt(form);
  const double scale = coefficients.squaredNorm() * A.cwiseAbs().maxCoeff();
  if (form < -1e-10 * scale)
    throw CpdViolationError("semi_norm: quadratic form " + std::to_string(form) +
                            " is negative on a moment-constrained vector");
  return 0.0;
}

}  // namespace hspline
