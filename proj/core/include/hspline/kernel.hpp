#pragma once

#include <span>

namespace hspline {

// Parameters of the shifted surface spline
//
//     h(x) = (-1)^m (|x|^2 + c^2)^(lambda/2) * (1/2) ln(|x|^2 + c^2),   m = 1 + lambda/2,
//
// restricted to even dimension n and even exponent lambda. l_const is the positive
// constant in front of the Fourier transform of h; it is not known in closed form and
// defaults to 1.
class KernelParams {
 public:
  KernelParams(int n, int lambda, double c, double l_const = 1.0);

  int n() const noexcept { return n_; }
  int lambda() const noexcept { return lambda_; }
  double c() const noexcept { return c_; }
  double l_const() const noexcept { return l_const_; }

  // Order of conditional positive definiteness.
  int m() const noexcept { return 1 + lambda_ / 2; }
  // Degree of the polynomial part of the interpolant, m - 1.
  int poly_degree() const noexcept { return m() - 1; }
  // Order of the Bessel function in the Fourier transform, (n + lambda) / 2.
  int bessel_order() const noexcept { return (n_ + lambda_) / 2; }

  friend bool operator==(const KernelParams&, const KernelParams&) = default;

 private:
  int n_;
  int lambda_;
  double c_;
  double l_const_;
};

// h(x) for an n-vector x.
double kernel_eval(const KernelParams& params, std::span<const double> x);

// h as a function of r2 = |x|^2. No validation; used on hot paths.
double kernel_radial(const KernelParams& params, double r2) noexcept;

// Modified Bessel function of the second kind K_nu(t), integer order nu >= 0, t > 0.
double bessel_k(int nu, double t);

// e^t K_nu(t); finite for all t > 0 where K_nu itself would underflow.
double bessel_k_scaled(int nu, double t);

// Density of the spectral measure: l * r^(-lambda-n) * (c r)^nu * K_nu(c r), nu = (n+lambda)/2.
double fourier_density(const KernelParams& params, double r);

// Natural log of fourier_density; finite where the density itself underflows.
double log_fourier_density(const KernelParams& params, double r);

}  // namespace hspline
