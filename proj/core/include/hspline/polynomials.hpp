#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hspline/geometry.hpp"

namespace hspline {

// gamma_1 = 2, gamma_n = 2n(1 + gamma_{n-1}), exact. Throws DomainError for n <= 0 and
// for n large enough to overflow 64 bits (n > 18).
std::uint64_t gamma_n(int n);

using MultiIndex = std::vector<int>;

// Monomial basis of polynomials on R^n of total degree <= degree, in graded
// lexicographic order: by total degree, then by descending exponent of x1, x2, ...
// For n = 2, degree 2 that is 1, x1, x2, x1^2, x1 x2, x2^2.
class PolynomialBasis {
 public:
  PolynomialBasis(int n, int degree);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<MultiIndex>& multi_indices() const noexcept { return indices_; }

  // Values of every basis monomial at x.
  Eigen::RowVectorXd evaluate(std::span<const double> x) const;

 private:
  int n_;
  int degree_;
  std::vector<MultiIndex> indices_;
};

// binomial(n + degree, n)
std::size_t polynomial_space_dim(int n, int degree);

// P(i, j) = j-th basis monomial at the i-th point.
Eigen::MatrixXd poly_matrix(const PolynomialBasis& basis, const PointSet& points);

// Whether the only polynomial of total degree <= degree vanishing on the points is zero.
// Rank is judged by singular values against tol, or by default against
// 100 * eps * sigma_max * max(N, dim P).
bool is_determining(const PointSet& points, int degree, std::optional<double> tol = std::nullopt);

struct PolyBoundReport {
  int n;
  int k;
  int q;
  int trials;
  int samples_per_axis;  // dense grid resolution used for sup over the cube
  double max_ratio;      // max over trials of sup_Q|p| / sup_Y|p|
  double ln_bound;       // 2 n gamma_n (k + 1)
  bool pass;
};

// Empirical check of sup_Q |p| <= e^{2 n gamma_n (k+1)} sup_Y |p| on the unit cube Q
// split into q^n subcubes, Y one random point per subcube. Each trial draws a fresh
// polynomial (coefficients uniform in [-1, 1]) and a fresh Y from a stream derived
// from (seed, trial). Requires q >= gamma_n (k + 1), n in {1, 2}, k <= 3.
PolyBoundReport polybound_check(int n, int k, int q, int trials, std::uint64_t seed, int samples_per_subcube = 50);

}  // namespace hspline
