#include "hspline/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hspline/errors.hpp"

namespace hspline {

CubeDomain::CubeDomain(Eigen::VectorXd lower, double side) : lower_(std::move(lower)), side_(side) {
  if (lower_.size() < 1) throw InvalidArgument("CubeDomain: dimension must be >= 1");
  if (!(side > 0.0) || !std::isfinite(side)) throw DomainError("CubeDomain: side must be finite and > 0");
  if (!lower_.allFinite()) throw InvalidArgument("CubeDomain: lower corner must be finite");
}

CubeDomain CubeDomain::unit(int dim) { return CubeDomain(Eigen::VectorXd::Zero(dim), 1.0); }

bool CubeDomain::contains(std::span<const double> x, double tol) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < lower_[i] - tol || x[i] > lower_[i] + side_ + tol) return false;
  }
  return true;
}

PointSet::PointSet(int dim) : dim_(dim), points_(0, dim) {
  if (dim < 1) throw InvalidArgument("PointSet: dimension must be >= 1");
}

PointSet::PointSet(Eigen::MatrixXd points, std::optional<CubeDomain> domain)
    : dim_(static_cast<int>(points.cols())), points_(std::move(points)), domain_(std::move(domain)) {
  if (dim_ < 1) throw InvalidArgument("PointSet: dimension must be >= 1");
  if (!points_.allFinite()) throw InvalidArgument("PointSet: non-finite coordinate");
  if (domain_) {
    if (domain_->dim() != dim_) throw InvalidArgument("PointSet: domain dimension mismatch");
    const double tol = 1e-12 * domain_->side();
    for (Eigen::Index i = 0; i < points_.rows(); ++i) {
      Eigen::VectorXd p = points_.row(i).transpose();
      if (!domain_->contains(std::span<const double>(p.data(), p.size()), tol))
        throw InvalidArgument("PointSet: point " + std::to_string(i) + " lies outside the domain");
    }
  }

  // Sweep in order of the first coordinate; only points within the tolerance
  // window along that axis can be duplicates.
  const auto n = static_cast<std::size_t>(points_.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points_(a, 0) < points_(b, 0); });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto a = static_cast<Eigen::Index>(order[i]);
      const auto b = static_cast<Eigen::Index>(order[j]);
      if (points_(b, 0) - points_(a, 0) > kDuplicateTolerance) break;
      if ((points_.row(a) - points_.row(b)).cwiseAbs().maxCoeff() <= kDuplicateTolerance)
        throw InvalidArgument("PointSet: duplicate points " + std::to_string(a) + " and " + std::to_string(b));
    }
  }
}

PointSet PointSet::permuted(std::span<const std::size_t> order) const {
  if (order.size() != size()) throw InvalidArgument("PointSet::permuted: permutation size mismatch");
  Eigen::MatrixXd out(points_.rows(), points_.cols());
  for (std::size_t i = 0; i < order.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = point(order[i]);
  return PointSet(std::move(out), domain_);
}

PointKind parse_point_kind(const std::string& name) {
  if (name == "grid") return PointKind::Grid;
  if (name == "jittered") return PointKind::Jittered;
  if (name == "halton") return PointKind::Halton;
  throw InvalidArgument("unknown point kind '" + name + "' (expected grid, jittered or halton)");
}

std::string to_string(PointKind kind) {
  switch (kind) {
    case PointKind::Grid: return "grid";
    case PointKind::Jittered: return "jittered";
    case PointKind::Halton: return "halton";
  }
  return "unknown";
}

int cells_per_axis(double side, double delta) {
  if (!(delta > 0.0)) throw DomainError("cells_per_axis: delta must be > 0");
  const double ratio = side / delta;
  const double nearest = std::round(ratio);
  if (nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, ratio))
    return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(ratio));
}

namespace {

std::size_t checked_product(int per_axis, int dim, const char* what) {
  double total = std::pow(static_cast<double>(per_axis), dim);
  if (total > 5e8) throw DomainError(std::string(what) + ": partition has too many cells");
  return static_cast<std::size_t>(total);
}

// Decodes a row-major flat index (last axis fastest) into per-axis indices.
void unflatten(std::size_t flat, int per_axis, std::vector<int>& idx) {
  for (int d = static_cast<int>(idx.size()) - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % per_axis);
    flat /= per_axis;
  }
}

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int candidate = 2; static_cast<int>(primes.size()) < count; ++candidate) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

double radical_inverse(std::uint64_t index, int base) {
  double inv_base = 1.0 / base;
  double factor = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += factor * static_cast<double>(index % base);
    index /= base;
    factor *= inv_base;
  }
  return result;
}

}  // namespace

PointSet generate_points(const CubeDomain& domain, PointKind kind, double parameter, std::uint64_t seed) {
  if (!(parameter > 0.0) || !std::isfinite(parameter))
    throw DomainError("generate_points: spacing/count must be positive");
  const int dim = domain.dim();
  const double side = domain.side();
  const Eigen::VectorXd& lo = domain.lower();

  switch (kind) {
    case PointKind::Grid: {
      const int per_axis = static_cast<int>(std::floor(side / parameter * (1.0 + 1e-12))) + 1;
      const std::size_t total = checked_product(per_axis, dim, "generate_points");
      Eigen::MatrixXd pts(static_cast<Eigen::Index>(total), dim);
      std::vector<int> idx(dim);
      for (std::size_t i = 0; i < total; ++i) {
        unflatten(i, per_axis, idx);
        for (int d = 0; d < dim; ++d)
          pts(static_cast<Eigen::Index>(i), d) = std::min(lo[d] + idx[d] * parameter, lo[d] + side);
      }
      return PointSet(std::move(pts), domain);
    }
    case PointKind::Jittered: {
      const int per_axis = cells_per_axis(side, parameter);
      const std::size_t total = checked_product(per_axis, dim, "generate_points");
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      Eigen::MatrixXd pts(static_cast<Eigen::Index>(total), dim);
      std::vector<int> idx(dim);
      for (std::size_t i = 0; i < total; ++i) {
        unflatten(i, per_axis, idx);
        for (int d = 0; d < dim; ++d) {
          const double a = lo[d] + idx[d] * parameter;
          const double b = std::min(a + parameter, lo[d] + side);
          pts(static_cast<Eigen::Index>(i), d) = a + (b - a) * unif(rng);
        }
      }
      return PointSet(std::move(pts), domain);
    }
    case PointKind::Halton: {
      if (parameter != std::floor(parameter)) throw DomainError("generate_points: halton count must be an integer");
      const auto count = static_cast<Eigen::Index>(parameter);
      const std::vector<int> bases = first_primes(dim);
      Eigen::MatrixXd pts(count, dim);
      for (Eigen::Index i = 0; i < count; ++i) {
        for (int d = 0; d < dim; ++d)
          pts(i, d) = lo[d] + side * radical_inverse(static_cast<std::uint64_t>(i + 1), bases[d]);
      }
      return PointSet(std::move(pts), domain);
    }
  }
  throw InvalidArgument("generate_points: unknown kind");
}

FillBracket fill_distance(const CubeDomain& domain, const PointSet& points, int resolution) {
  if (points.empty()) throw DomainError("fill_distance: empty point set");
  if (resolution < 2) throw DomainError("fill_distance: resolution must be >= 2");
  if (points.dim() != domain.dim()) throw InvalidArgument("fill_distance: dimension mismatch");

  const int dim = domain.dim();
  const double step = domain.side() / (resolution - 1);
  const std::size_t total = checked_product(resolution, dim, "fill_distance");
  const Eigen::MatrixXd& X = points.coords();

  std::vector<int> idx(dim);
  Eigen::RowVectorXd probe(dim);
  double worst_sq = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    unflatten(i, resolution, idx);
    for (int d = 0; d < dim; ++d) probe[d] = domain.lower()[d] + idx[d] * step;
    double nearest_sq = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < X.rows(); ++j) {
      double dist_sq = 0.0;
      for (int d = 0; d < dim; ++d) {
        const double diff = X(j, d) - probe[d];
        dist_sq += diff * diff;
        if (dist_sq >= nearest_sq) break;
      }
      nearest_sq = std::min(nearest_sq, dist_sq);
    }
    worst_sq = std::max(worst_sq, nearest_sq);
  }
  const double lower = std::sqrt(worst_sq);
  // Every point of the cube lies within sqrt(n)/2 * step of some probe.
  return {lower, lower + 0.5 * std::sqrt(static_cast<double>(dim)) * step};
}

Coverage subcube_coverage(const CubeDomain& domain, double delta, const PointSet& points) {
  if (!(delta > 0.0)) throw DomainError("subcube_coverage: delta must be > 0");
  if (delta > domain.side() * (1.0 + 1e-12)) throw DomainError("subcube_coverage: delta exceeds the cube side");
  if (points.dim() != domain.dim()) throw InvalidArgument("subcube_coverage: dimension mismatch");

  const int dim = domain.dim();
  const int per_axis = cells_per_axis(domain.side(), delta);
  const std::size_t total = checked_product(per_axis, dim, "subcube_coverage");
  std::vector<char> covered(total, 0);
  const double boundary_tol = 1e-12 * per_axis;

  // Cells are half-open [j delta, (j+1) delta) except the last, which also takes the
  // far face, so every point covers exactly one cell.
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::size_t flat = 0;
    bool inside = true;
    for (int d = 0; d < dim; ++d) {
      const double u = (points.point(i)[d] - domain.lower()[d]) / delta;
      if (u < -boundary_tol || u > per_axis + boundary_tol) {
        inside = false;
        break;
      }
      const int j = std::clamp(static_cast<int>(std::floor(u)), 0, per_axis - 1);
      flat = flat * per_axis + static_cast<std::size_t>(j);
    }
    if (inside) covered[flat] = 1;
  }

  for (std::size_t cell = 0; cell < total; ++cell) {
    if (!covered[cell]) return {false, cell};
  }
  return {true, std::nullopt};
}

}  // namespace hspline
