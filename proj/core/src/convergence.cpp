#include "hspline/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "hspline/errors.hpp"
#include "hspline/interpolator.hpp"
#include "hspline/polynomials.hpp"

namespace hspline {

TargetKind parse_target_kind(const std::string& name) {
  if (name == "native") return TargetKind::Native;
  if (name == "gaussian") return TargetKind::Gaussian;
  if (name == "polynomial") return TargetKind::Polynomial;
  throw InvalidArgument("unknown target '" + name + "' (expected native, gaussian or polynomial)");
}

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::Native: return "native";
    case TargetKind::Gaussian: return "gaussian";
    case TargetKind::Polynomial: return "polynomial";
  }
  return "unknown";
}

CubeDomain ConvergenceConfig::cube() const { return domain ? *domain : CubeDomain::unit(params.n()); }

void validate(const ConvergenceConfig& config) {
  const CubeDomain cube = config.cube();
  if (cube.dim() != config.params.n()) throw SetupError("convergence: domain dimension differs from n");
  if (config.levels < 3) throw SetupError("convergence: at least 3 levels are required");
  if (!(config.coarsest_spacing > 0.0) || config.coarsest_spacing > cube.side())
    throw SetupError("convergence: coarsest spacing must lie in (0, side]");
  if (config.eval_resolution < 2 || config.fill_resolution < 2)
    throw SetupError("convergence: evaluation and fill resolutions must be >= 2");
  if (!(config.b0 > 0.0)) throw SetupError("convergence: b0 must be > 0");
  const double finest = config.coarsest_spacing / std::ldexp(1.0, config.levels - 1);
  const double N = std::pow(static_cast<double>(cells_per_axis(cube.side(), finest)), config.params.n());
  if (N > static_cast<double>(kMaxCenters))
    throw SetupError("convergence: finest level would use " + std::to_string(static_cast<long long>(N)) +
                     " points, above the dense-solver cap of " + std::to_string(kMaxCenters));
  const auto& t = config.target;
  if (t.kind == TargetKind::Native && (t.native_centers < 1 || !(t.native_margin >= 0.0 && t.native_margin < 0.5)))
    throw SetupError("convergence: native target needs centers >= 1 and margin in [0, 0.5)");
  if (t.kind == TargetKind::Gaussian) {
    if (!(t.gaussian_width > 0.0)) throw SetupError("convergence: gaussian width must be > 0");
    if (!t.gaussian_center.empty() && static_cast<int>(t.gaussian_center.size()) != config.params.n())
      throw SetupError("convergence: gaussian center has the wrong dimension");
  }
  if (t.kind == TargetKind::Polynomial && !t.polynomial_coeffs.empty() &&
      t.polynomial_coeffs.size() != polynomial_space_dim(config.params.n(), config.params.poly_degree()))
    throw SetupError("convergence: polynomial target needs one coefficient per basis monomial");
}

RateFit fit_rate(std::span<const RatePoint> levels) {
  RateFit fit;
  std::vector<double> inv_d;
  std::vector<double> log_d;
  std::vector<double> log_e;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& p = levels[i];
    if (!(p.d > 0.0)) throw InvalidArgument("fit_rate: spacing must be > 0");
    if (!(p.error > 0.0)) {
      fit.notes.push_back("level " + std::to_string(i + 1) + " excluded: zero error");
      continue;
    }
    inv_d.push_back(1.0 / p.d);
    log_d.push_back(std::log(p.d));
    log_e.push_back(std::log(p.error));
  }
  if (log_e.size() < 3)
    throw FitUnavailableError("fit_rate: need at least 3 levels with positive error, have " +
                              std::to_string(log_e.size()));
  fit.points_used = log_e.size();

  struct Line {
    double slope;
    double r_squared;
  };
  auto least_squares = [](const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
      syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw FitUnavailableError("fit_rate: all levels share the same spacing");
    const double slope = sxy / sxx;
    const double ss_res = std::max(0.0, syy - slope * sxy);
    const double r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    return Line{slope, r2};
  };

  const Line exponential = least_squares(inv_d, log_e);
  const Line algebraic = least_squares(log_d, log_e);
  fit.slope_vs_inv_d = exponential.slope;
  fit.omega_emp = std::exp(exponential.slope);
  fit.r_squared = exponential.r_squared;
  fit.algebraic_order = algebraic.slope;
  if (exponential.slope >= 0.0) {
    fit.no_decay = true;
    fit.notes.push_back("no decay");
  }
  return fit;
}

namespace {

struct Target {
  std::function<double(const Eigen::VectorXd&)> f;
  std::optional<double> f_norm;
};

Target make_target(const ConvergenceConfig& config, const CubeDomain& cube) {
  const KernelParams& params = config.params;
  const TargetSpec& spec = config.target;
  const int n = params.n();
  switch (spec.kind) {
    case TargetKind::Native: {
      Eigen::VectorXd inner_lower = cube.lower().array() + spec.native_margin * cube.side();
      const CubeDomain inner(inner_lower, cube.side() * (1.0 - 2.0 * spec.native_margin));
      PointSet centers = generate_points(inner, PointKind::Halton, spec.native_centers, config.seed);
      Eigen::VectorXd coeffs = make_native_test_function(params, centers, config.seed);
      const double norm = semi_norm(params, centers, coeffs);
      auto f = [params, centers, coeffs](const Eigen::VectorXd& x) {
        double sum = 0.0;
        for (std::size_t j = 0; j < centers.size(); ++j)
          sum += coeffs[static_cast<Eigen::Index>(j)] *
                 kernel_radial(params, (x - centers.point(j).transpose()).squaredNorm());
        return sum;
      };
      return {f, norm};
    }
    case TargetKind::Gaussian: {
      Eigen::VectorXd center(n);
      if (spec.gaussian_center.empty())
        center = cube.lower().array() + 0.5 * cube.side();
      else
        center = Eigen::Map<const Eigen::VectorXd>(spec.gaussian_center.data(), n);
      const double w2 = spec.gaussian_width * spec.gaussian_width;
      return {[center, w2](const Eigen::VectorXd& x) { return std::exp(-(x - center).squaredNorm() / w2); },
              std::nullopt};
    }
    case TargetKind::Polynomial: {
      const PolynomialBasis basis(n, params.poly_degree());
      Eigen::VectorXd coeffs(static_cast<Eigen::Index>(basis.size()));
      if (spec.polynomial_coeffs.empty()) {
        for (Eigen::Index j = 0; j < coeffs.size(); ++j) coeffs[j] = 1.0 + 0.5 * static_cast<double>(j);
      } else {
        coeffs = Eigen::Map<const Eigen::VectorXd>(spec.polynomial_coeffs.data(), coeffs.size());
      }
      return {[basis, coeffs](const Eigen::VectorXd& x) {
                return basis.evaluate(std::span<const double>(x.data(), x.size())).dot(coeffs);
              },
              std::nullopt};
    }
  }
  throw InvalidArgument("unknown target kind");
}

Eigen::VectorXd sample(const Target& target, const PointSet& points) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = target.f(points.point(i).transpose());
  return out;
}

}  // namespace

ConvergenceReport run_convergence(const ConvergenceConfig& config) {
  validate(config);
  const CubeDomain cube = config.cube();
  const Target target = make_target(config, cube);

  ConvergenceReport report{config, bound_constants(config.params, config.b0), target.f_norm, {}, std::nullopt, {}};

  const double eval_step = cube.side() / (config.eval_resolution - 1);
  const PointSet eval_grid = generate_points(cube, PointKind::Grid, eval_step, 0);
  const Eigen::VectorXd exact = sample(target, eval_grid);

  for (int level = 1; level <= config.levels; ++level) {
    LevelRecord rec;
    rec.level = level;
    rec.delta = config.coarsest_spacing / std::ldexp(1.0, level - 1);
    rec.seed = config.seed + static_cast<std::uint64_t>(level);

    const PointSet X = generate_points(cube, PointKind::Jittered, rec.delta, rec.seed);
    rec.N = X.size();
    const Coverage coverage = subcube_coverage(cube, rec.delta, X);
    if (!coverage.pass)
      throw SetupError("convergence: level " + std::to_string(level) + " leaves subcube " +
                       std::to_string(*coverage.first_empty_cell) + " empty");
    const FillBracket fill = fill_distance(cube, X, config.fill_resolution);
    rec.fill_lower = fill.lower;
    rec.fill_upper = fill.upper;

    try {
      const InterpolationModel model = fit(config.params, X, sample(target, X), {config.force_ill_conditioned});
      rec.condition = model.diagnostics().condition;
      rec.condition_warning = model.diagnostics().condition_warning;
      rec.forced = model.diagnostics().forced;
      rec.max_error = (evaluate(model, eval_grid) - exact).cwiseAbs().maxCoeff();
    } catch (const IllConditionedError& e) {
      rec.failed = true;
      rec.failure = e.what();
      rec.condition = e.condition();
    } catch (const UnisolvencyError& e) {
      rec.failed = true;
      rec.failure = e.what();
    }

    if (target.f_norm && !rec.failed) {
      try {
        rec.certified = error_bound(report.constants, Spacing::from_value(rec.fill_upper), BoundForm::Fill,
                                    *target.f_norm, config.force_hypothesis);
        const double ln_error = std::log(rec.max_error);
        rec.bound_holds = ln_error <= rec.certified->ln_bound;
        rec.bound_slack = std::exp(rec.certified->ln_bound - ln_error);
      } catch (const HypothesisViolatedError&) {
        rec.certified.reset();
      }
    }
    report.levels.push_back(std::move(rec));
  }

  if (config.target.kind == TargetKind::Polynomial) {
    report.fit_note = "skipped: polynomial targets are reproduced exactly";
  } else {
    std::vector<RatePoint> points;
    for (const auto& rec : report.levels)
      if (!rec.failed) points.push_back({rec.fill_upper, rec.max_error});
    try {
      report.fitted = fit_rate(points);
    } catch (const FitUnavailableError& e) {
      report.fit_note = e.what();
    }
  }
  return report;
}

}  // namespace hspline
