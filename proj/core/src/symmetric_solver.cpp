#include "symmetric_solver.hpp"

#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <lapacke.h>

namespace hspline::detail {

SymmetricSolve solve_symmetric_indefinite(const Eigen::MatrixXd& M, const Eigen::VectorXd& rhs,
                                          Eigen::Index svd_limit) {
  const auto n = static_cast<lapack_int>(M.rows());
  SymmetricSolve out{Eigen::VectorXd::Zero(n), std::numeric_limits<double>::infinity(), false};

  Eigen::MatrixXd factor = M;  // column-major; lower triangle is used
  std::vector<lapack_int> pivots(static_cast<std::size_t>(n));
  lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, factor.data(), n, pivots.data());
  if (info != 0) {
    out.singular = true;
    return out;
  }

  Eigen::VectorXd x = rhs;
  info = LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', n, 1, factor.data(), n, pivots.data(), x.data(), n);
  if (info != 0) {
    out.singular = true;
    return out;
  }

  double ferr = 0.0;
  double berr = 0.0;
  info = LAPACKE_dsyrfs(LAPACK_COL_MAJOR, 'L', n, 1, M.data(), n, factor.data(), n, pivots.data(), rhs.data(), n,
                        x.data(), n, &ferr, &berr);
  (void)info;  // refinement failure leaves x at the unrefined solution
  out.solution = std::move(x);

  if (M.rows() <= svd_limit) {
    // Singular values of a symmetric matrix are the absolute eigenvalues.
    Eigen::MatrixXd work = M;
    Eigen::VectorXd eig(n);
    info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, eig.data());
    const double smin = eig.cwiseAbs().minCoeff();
    const double smax = eig.cwiseAbs().maxCoeff();
    out.condition = (info == 0 && smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
  } else {
    const double anorm = LAPACKE_dlansy(LAPACK_COL_MAJOR, '1', 'L', n, M.data(), n);
    double rcond = 0.0;
    info = LAPACKE_dsycon(LAPACK_COL_MAJOR, 'L', n, factor.data(), n, pivots.data(), anorm, &rcond);
    out.condition = (info == 0 && rcond > 0.0) ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace hspline::detail
