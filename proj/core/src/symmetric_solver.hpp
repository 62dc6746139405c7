#pragma once

#include <Eigen/Core>

namespace hspline::detail {

struct SymmetricSolve {
  Eigen::VectorXd solution;
  double condition;  // estimate of the condition number of the matrix
  bool singular;     // the factorization hit an exactly zero pivot
};

// Solves M x = rhs for symmetric (possibly indefinite) M using Bunch-Kaufman
// diagonal pivoting (LAPACK dsytrf/dsytrs) followed by iterative refinement
// (dsyrfs). The condition number is the 2-norm ratio of extreme singular values
// when M has at most `svd_limit` rows, and LAPACK's 1-norm estimate (dsycon)
// otherwise.
SymmetricSolve solve_symmetric_indefinite(const Eigen::MatrixXd& M, const Eigen::VectorXd& rhs,
                                          Eigen::Index svd_limit);

}  // namespace hspline::detail
