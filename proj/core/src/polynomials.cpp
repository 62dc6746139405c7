#include "hspline/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "hspline/errors.hpp"

namespace hspline {

std::uint64_t gamma_n(int n) {
  if (n <= 0) throw DomainError("gamma_n: n must be >= 1, got " + std::to_string(n));
  std::uint64_t g = 2;
  for (int i = 2; i <= n; ++i) {
    const std::uint64_t two_i = 2u * static_cast<std::uint64_t>(i);
    if (g >= std::numeric_limits<std::uint64_t>::max() / two_i - 1)
      throw DomainError("gamma_n: value overflows 64 bits for n = " + std::to_string(n));
    g = two_i * (1 + g);
  }
  return g;
}

std::size_t polynomial_space_dim(int n, int degree) {
  if (degree < 0) return 0;
  // binomial(n + degree, degree), built incrementally to stay exact.
  std::size_t result = 1;
  for (int i = 1; i <= degree; ++i) result = result * static_cast<std::size_t>(n + i) / static_cast<std::size_t>(i);
  return result;
}

namespace {

// Appends all exponent vectors of total degree `remaining` over axes [axis, n), with
// larger powers of earlier axes first.
void compositions(int axis, int remaining, MultiIndex& current, std::vector<MultiIndex>& out) {
  const int n = static_cast<int>(current.size());
  if (axis == n - 1) {
    current[axis] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[axis] = e;
    compositions(axis + 1, remaining - e, current, out);
  }
  current[axis] = 0;
}

}  // namespace

PolynomialBasis::PolynomialBasis(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1) throw InvalidArgument("PolynomialBasis: dimension must be >= 1");
  if (degree < 0) throw InvalidArgument("PolynomialBasis: degree must be >= 0");
  MultiIndex current(n, 0);
  for (int total = 0; total <= degree; ++total) compositions(0, total, current, indices_);
}

Eigen::RowVectorXd PolynomialBasis::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw InvalidArgument("PolynomialBasis::evaluate: dimension mismatch");
  Eigen::RowVectorXd row(static_cast<Eigen::Index>(indices_.size()));
  for (std::size_t j = 0; j < indices_.size(); ++j) {
    double value = 1.0;
    for (int d = 0; d < n_; ++d)
      for (int e = 0; e < indices_[j][d]; ++e) value *= x[d];
    row[static_cast<Eigen::Index>(j)] = value;
  }
  return row;
}

Eigen::MatrixXd poly_matrix(const PolynomialBasis& basis, const PointSet& points) {
  if (points.dim() != basis.dim())
    throw InvalidArgument("poly_matrix: point dimension " + std::to_string(points.dim()) +
                          " does not match basis dimension " + std::to_string(basis.dim()));
  Eigen::MatrixXd P(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXd x(points.dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    x = points.point(i).transpose();
    P.row(static_cast<Eigen::Index>(i)) = basis.evaluate(std::span<const double>(x.data(), x.size()));
  }
  return P;
}

bool is_determining(const PointSet& points, int degree, std::optional<double> tol) {
  if (tol && *tol < 0.0) throw InvalidArgument("is_determining: tol must be >= 0");
  const PolynomialBasis basis(points.dim(), degree);
  if (points.size() < basis.size()) return false;
  const Eigen::MatrixXd P = poly_matrix(basis, points);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(P).singularValues();
  const double sigma_max = sv[0];
  const double threshold = tol ? *tol
                               : 100.0 * std::numeric_limits<double>::epsilon() * sigma_max *
                                     static_cast<double>(std::max<std::size_t>(points.size(), basis.size()));
  if (sigma_max == 0.0) return false;
  return sv[sv.size() - 1] > threshold;
}

PolyBoundReport polybound_check(int n, int k, int q, int trials, std::uint64_t seed, int samples_per_subcube) {
  if (n != 1 && n != 2) throw PreconditionError("polybound_check: n must be 1 or 2");
  if (k < 0 || k > 3) throw PreconditionError("polybound_check: k must be in [0, 3]");
  if (trials < 1) throw PreconditionError("polybound_check: trials must be >= 1");
  if (samples_per_subcube < 50) throw PreconditionError("polybound_check: need >= 50 samples per subcube axis");
  const std::uint64_t g = gamma_n(n);
  if (q < 1 || static_cast<std::uint64_t>(q) < g * static_cast<std::uint64_t>(k + 1))
    throw PreconditionError("polybound_check: q = " + std::to_string(q) + " is below gamma_n (k+1) = " +
                            std::to_string(g * static_cast<std::uint64_t>(k + 1)));

  const PolynomialBasis basis(n, k);
  const auto terms = static_cast<Eigen::Index>(basis.size());
  const int grid = q * samples_per_subcube + 1;

  // Powers of the dense grid coordinates, shared by every trial: powers(i, e) = t_i^e.
  Eigen::MatrixXd powers(grid, k + 1);
  for (int i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) / (grid - 1);
    powers(i, 0) = 1.0;
    for (int e = 1; e <= k; ++e) powers(i, e) = powers(i, e - 1) * t;
  }

  double max_ratio = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Eigen::VectorXd a(terms);
    for (Eigen::Index j = 0; j < terms; ++j) a[j] = coeff(rng);

    double sup_y = 0.0;
    const int subcubes = (n == 1) ? q : q * q;
    Eigen::VectorXd y(n);
    for (int cell = 0; cell < subcubes; ++cell) {
      const int ix = (n == 1) ? cell : cell / q;
      const int iy = (n == 1) ? 0 : cell % q;
      y[0] = (ix + unit(rng)) / q;
      if (n == 2) y[1] = (iy + unit(rng)) / q;
      sup_y = std::max(sup_y, std::abs(basis.evaluate(std::span<const double>(y.data(), n)).dot(a)));
    }

    double sup_q = 0.0;
    if (n == 1) {
      for (int i = 0; i < grid; ++i) sup_q = std::max(sup_q, std::abs(powers.row(i).head(terms).dot(a)));
    } else {
      // p(x1, x2) = sum_j a_j x1^e1 x2^e2; for fixed x1 this is a polynomial in x2
      // whose coefficients are gathered once per grid row.
      Eigen::VectorXd by_power(k + 1);
      for (int i = 0; i < grid; ++i) {
        by_power.setZero();
        for (Eigen::Index j = 0; j < terms; ++j) {
          const auto& e = basis.multi_indices()[static_cast<std::size_t>(j)];
          by_power[e[1]] += a[j] * powers(i, e[0]);
        }
        for (int l = 0; l < grid; ++l) sup_q = std::max(sup_q, std::abs(powers.row(l).dot(by_power)));
      }
    }
    if (sup_y > 0.0) max_ratio = std::max(max_ratio, sup_q / sup_y);
  }

  const double ln_bound = 2.0 * n * static_cast<double>(g) * (k + 1);
  return {n, k, q, trials, grid, max_ratio, ln_bound, std::log(max_ratio) <= ln_bound};
}

}  // namespace hspline
