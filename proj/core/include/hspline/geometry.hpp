#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Core>

namespace hspline {

// Axis-aligned closed cube [lower, lower + side]^n.
class CubeDomain {
 public:
  CubeDomain(Eigen::VectorXd lower, double side);

  static CubeDomain unit(int dim);

  int dim() const noexcept { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const noexcept { return lower_; }
  double side() const noexcept { return side_; }
  bool contains(std::span<const double> x, double tol = 0.0) const;

 private:
  Eigen::VectorXd lower_;
  double side_;
};

// Finite set of distinct points in R^dim, stored one point per row.
//
// Points closer than 1e-14 (max-norm) to each other are rejected, as are
// non-finite coordinates and, when a domain is attached, points outside it.
class PointSet {
 public:
  static constexpr double kDuplicateTolerance = 1e-14;

  explicit PointSet(int dim);
  explicit PointSet(Eigen::MatrixXd points, std::optional<CubeDomain> domain = std::nullopt);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  bool empty() const noexcept { return points_.rows() == 0; }

  const Eigen::MatrixXd& coords() const noexcept { return points_; }
  auto point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)); }
  const std::optional<CubeDomain>& domain() const noexcept { return domain_; }

  // Same points reordered; used for permutation-invariance checks.
  PointSet permuted(std::span<const std::size_t> order) const;

 private:
  int dim_;
  Eigen::MatrixXd points_;
  std::optional<CubeDomain> domain_;
};

enum class PointKind { Grid, Jittered, Halton };

PointKind parse_point_kind(const std::string& name);
std::string to_string(PointKind kind);

// grid:     lattice lower + i*spacing per axis, boundary included (parameter = spacing).
// jittered: one uniform point in each cell of the ceil(side/spacing)^n partition, last
//           cell clipped to the cube (parameter = spacing).
// halton:   first `count` Halton points, bases = first n primes (parameter = count).
PointSet generate_points(const CubeDomain& domain, PointKind kind, double parameter, std::uint64_t seed);

// Rigorous bracket for the fill distance sup_{y in cube} min_{x in X} |y - x|.
struct FillBracket {
  double lower;
  double upper;
};

FillBracket fill_distance(const CubeDomain& domain, const PointSet& points, int resolution);

// Number of partition cells per axis for a given delta: ceil(side/delta), ignoring
// floating-point slivers narrower than 1e-12 * side.
int cells_per_axis(double side, double delta);

struct Coverage {
  bool pass;
  std::optional<std::size_t> first_empty_cell;  // row-major, last axis fastest
};

// Checks that every cell of side delta in the ceil(side/delta)^n partition of the cube
// (last cell clipped) contains at least one point. Each point is assigned to the one
// half-open cell holding it, so a lattice point on a shared corner covers one cell,
// not all of its neighbours; passing here implies passing with closed cells.
Coverage subcube_coverage(const CubeDomain& domain, double delta, const PointSet& points);

// CSV with header x1,...,xn, one point per row.
PointSet read_points_csv(std::istream& in);
PointSet read_points_csv(const std::string& path);
void write_points_csv(std::ostream& out, const PointSet& points);

// Single-column CSV with header `value`.
Eigen::VectorXd read_values_csv(std::istream& in);
Eigen::VectorXd read_values_csv(const std::string& path);

}  // namespace hspline
