#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hspline/bounds.hpp"
#include "hspline/errors.hpp"

namespace hspline {
namespace {

// ln(n alpha_n), the log of the surface area of the unit sphere in R^n.
double log_sphere_area(int n) {
  return std::log(static_cast<double>(n)) + 0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0);
}

}  // namespace

LogValue moment_exact(const KernelParams& params, int k) {
  const int n = params.n();
  const int lambda = params.lambda();
  if (k <= lambda)
    throw DivergentMomentError("moment_exact: moment of order " + std::to_string(k) +
                               " diverges (need k > lambda = " + std::to_string(lambda) + ")");
  const double ln = std::log(params.l_const()) + log_sphere_area(n) + (lambda - k) * std::log(params.c()) +
                    (k + 0.5 * (n - lambda) - 2.0) * std::numbers::ln2 + std::lgamma(0.5 * (k - lambda)) +
                    std::lgamma(0.5 * (k + n));
  return {ln};
}

double moment_quadrature(const KernelParams& params, int k, double rel_tol) {
  const int n = params.n();
  const int lambda = params.lambda();
  if (k <= lambda)
    throw DivergentMomentError("moment_quadrature: moment of order " + std::to_string(k) + " diverges");
  const double c = params.c();
  const double ln_area = log_sphere_area(n);

  // Radial integrand n alpha_n r^(k+n-1) * density(r), evaluated through logs.
  auto log_integrand = [&](double r) {
    return ln_area + (k + n - 1) * std::log(r) + log_fourier_density(params, r);
  };
  auto integrand = [&](double r) { return r > 0.0 ? std::exp(log_integrand(r)) : 0.0; };

  // Large-r behaviour is r^(k-lambda-3/2+nu) e^{-c r}; its maximum sits near `peak`.
  const int nu = params.bessel_order();
  const double peak = std::max((k - lambda + nu - 1.5) / c, 1.0 / c);
  const double ln_scale = log_integrand(peak) + std::log(0.1 * peak);
  double cutoff = 2.0 * peak + 10.0 / c;
  // Beyond 2*peak the tail integral is below 2 g(R) / c.
  while (log_integrand(cutoff) + std::log(2.0 / c) > ln_scale + std::log(1e-18)) cutoff *= 1.5;

  std::vector<double> breaks{0.0, 0.25 * peak, 0.5 * peak, peak, 2.0 * peak};
  while (breaks.back() < cutoff) breaks.push_back(std::min(2.0 * breaks.back(), cutoff));

  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double error = 0.0;
    total += Rule::integrate(integrand, breaks[i], breaks[i + 1], 20, rel_tol, &error);
  }
  return total;
}

LogValue moment_bound_rhs(const KernelParams& params, int k) {
  const int m = params.m();
  if (k < 2 * m + 2)
    throw PreconditionError("moment_bound_rhs: the bound is stated for k >= 2m + 2 = " + std::to_string(2 * m + 2) +
                            ", got " + std::to_string(k));
  const MomentCase mc = moment_case(params.n(), params.lambda(), m);
  const double ln = std::log(params.l_const()) + 0.5 * std::log(0.5 * std::numbers::pi) +
                    log_sphere_area(params.n()) + (params.lambda() - k) * std::log(params.c()) +
                    mc.ln_delta0_cap + k * std::log(mc.rho) + log_factorial(k);
  return {ln};
}

double moment_growth_ratio(const KernelParams& params, int k) {
  const double ln_ratio = moment_exact(params, k + 1).ln - moment_exact(params, k).ln + std::log(params.c()) -
                          std::log(static_cast<double>(k + 1));
  return std::exp(ln_ratio);
}

}  // namespace hspline
