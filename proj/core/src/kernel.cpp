#include "hspline/kernel.hpp"

#include <cmath>
#include <string>

#include "hspline/errors.hpp"

namespace hspline {

KernelParams::KernelParams(int n, int lambda, double c, double l_const)
    : n_(n), lambda_(lambda), c_(c), l_const_(l_const) {
  if (n < 2 || n % 2 != 0)
    throw InvalidArgument("KernelParams: dimension n must be an even integer >= 2, got " + std::to_string(n));
  if (lambda < 2 || lambda % 2 != 0)
    throw InvalidArgument("KernelParams: lambda must be an even integer >= 2, got " + std::to_string(lambda));
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("KernelParams: shift c must be finite and > 0");
  if (!(l_const > 0.0) || !std::isfinite(l_const))
    throw InvalidArgument("KernelParams: l_const must be finite and > 0");
}

double kernel_radial(const KernelParams& params, double r2) noexcept {
  const double s = r2 + params.c() * params.c();
  double power = 1.0;
  for (int i = 0; i < params.lambda() / 2; ++i) power *= s;
  const double sign = (params.m() % 2 == 0) ? 1.0 : -1.0;
  return sign * power * 0.5 * std::log(s);
}

double kernel_eval(const KernelParams& params, std::span<const double> x) {
  if (static_cast<int>(x.size()) != params.n())
    throw InvalidArgument("kernel_eval: expected a vector of length " + std::to_string(params.n()));
  double r2 = 0.0;
  for (double xi : x) {
    if (!std::isfinite(xi)) throw InvalidArgument("kernel_eval: non-finite coordinate");
    r2 += xi * xi;
  }
  return kernel_radial(params, r2);
}

double log_fourier_density(const KernelParams& params, double r) {
  if (!(r > 0.0) || std::isinf(r)) throw DomainError("fourier_density: radius must be finite and > 0");
  const int nu = params.bessel_order();
  const double t = params.c() * r;
  // ln K_nu(t) = ln(e^t K_nu(t)) - t
  return std::log(params.l_const()) - (params.lambda() + params.n()) * std::log(r) + nu * std::log(t) +
         std::log(bessel_k_scaled(nu, t)) - t;
}

double fourier_density(const KernelParams& params, double r) {
  return std::exp(log_fourier_density(params, r));
}

}  // namespace hspline
