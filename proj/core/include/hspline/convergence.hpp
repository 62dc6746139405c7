#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hspline/bounds.hpp"
#include "hspline/geometry.hpp"
#include "hspline/kernel.hpp"

namespace hspline {

enum class TargetKind { Native, Gaussian, Polynomial };

TargetKind parse_target_kind(const std::string& name);
std::string to_string(TargetKind kind);

struct TargetSpec {
  TargetKind kind = TargetKind::Native;
  // native: sum_j c_j h(x - y_j), y_j the first `native_centers` Halton points of the
  // cube shrunk by `native_margin` * side on every face, c from make_native_test_function.
  int native_centers = 12;
  double native_margin = 0.1;
  // gaussian: exp(-|x - center|^2 / width^2); empty center means the cube centre.
  std::vector<double> gaussian_center;
  double gaussian_width = 0.5;
  // polynomial: coefficients in the graded-lex basis of degree m - 1.
  std::vector<double> polynomial_coeffs;
};

struct ConvergenceConfig {
  KernelParams params{2, 2, 1.0};
  double b0 = kDefaultB0;
  std::optional<CubeDomain> domain;  // unit cube of dimension n when empty
  int levels = 4;
  double coarsest_spacing = 0.25;
  TargetSpec target;
  int eval_resolution = 101;
  int fill_resolution = 201;
  std::uint64_t seed = 1;
  // The bound's admissible fill distance d0 is astronomically small, so levels never
  // satisfy it; with this set the bound is still evaluated and the violation recorded.
  bool force_hypothesis = true;
  // Passed through to fit() as FitOptions::force.
  bool force_ill_conditioned = false;

  CubeDomain cube() const;
};

inline constexpr std::size_t kMaxCenters = 3000;

// Throws SetupError for fewer than 3 levels, a finest level above kMaxCenters points,
// or parameters inconsistent with the kernel dimension.
void validate(const ConvergenceConfig& config);

struct LevelRecord {
  int level = 0;  // 1-based
  double delta = 0.0;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  double fill_lower = 0.0;
  double fill_upper = 0.0;
  bool failed = false;
  std::string failure;
  double max_error = 0.0;
  double condition = 0.0;
  bool condition_warning = false;
  bool forced = false;
  std::optional<BoundEvaluation> certified;  // native targets, bound at d = fill_upper
  bool bound_holds = true;
  double bound_slack = 0.0;  // bound / max_error
};

struct RatePoint {
  double d;
  double error;
};

struct RateFit {
  double slope_vs_inv_d = 0.0;   // slope of ln E against 1/d
  double omega_emp = 1.0;        // e^slope
  double r_squared = 0.0;
  double algebraic_order = 0.0;  // slope of ln E against ln d
  bool no_decay = false;
  std::size_t points_used = 0;
  std::vector<std::string> notes;
};

// Least squares through (1/d, ln E) and (ln d, ln E). Levels with E == 0 are skipped
// with a note; fewer than 3 usable levels throws FitUnavailableError.
RateFit fit_rate(std::span<const RatePoint> levels);

struct ConvergenceReport {
  ConvergenceConfig config;
  BoundConstants constants;
  std::optional<double> f_norm;  // semi-norm of a native target
  std::vector<LevelRecord> levels;
  std::optional<RateFit> fitted;
  std::string fit_note;
};

ConvergenceReport run_convergence(const ConvergenceConfig& config);

}  // namespace hspline
