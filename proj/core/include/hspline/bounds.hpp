#pragma once

#include <cstdint>
#include <string>

#include "hspline/kernel.hpp"

namespace hspline {

// Positive number held by its natural logarithm. Values such as e^{5056} or
// 1 - omega only ever exist in this form.
struct LogValue {
  double ln = 0.0;
  double value() const;
};

// "4.67e-24"-style rendering computed from ln x without materializing x.
std::string format_scientific_from_log(double ln_x, int significant_digits = 3);

enum class MomentCaseTag { A, B, C };

char to_char(MomentCaseTag tag);

// Constants of the spectral moment bound
//
//     int |xi|^k dmu <= l sqrt(pi/2) n alpha_n c^(lambda-k) Delta0 rho^k k!,   k >= 2m + 2,
//
// split on n - lambda:
//   a: n - lambda > 3,       s = ceil((n-lambda-3)/2),  rho = 1 + s/(2m+3),
//                            Delta0 = (2m+2+s)(2m+1+s)...(2m+3) / rho^(2m+2)
//   b: n - lambda <= 1,      s = -ceil((n-lambda-3)/2), rho = 1,
//                            Delta0 = 1 / ((2m+2)(2m+1)...(2m-s+3))
//   c: 1 < n - lambda <= 3,  s = 0, rho = 1, Delta0 = 1
struct MomentCase {
  MomentCaseTag tag;
  int s;
  std::int64_t rho_num;
  std::int64_t rho_den;
  double rho;
  double delta0_cap;
  double ln_delta0_cap;
  std::string delta0_cap_exact;  // reduced rational "p/q"
};

MomentCase moment_case(int n, int lambda, int m);

// Every constant of the certified bound, log-space wherever the magnitude can leave
// double range.
//
//   B       = 2 rho' sqrt(n) e^{2 n gamma_n},  rho' = rho / c
//   C       = max(B, 2 / (3 b0))
//   delta0  = 1 / (3 C gamma_n (m + 1)),       d0 = delta0 / 2
//   L       = ln(1/omega)  = ln(3/2) / (3 C gamma_n),   L' = ln(1/omega') = L / 2
//   A       = sqrt(l) (pi/2)^{1/4} sqrt(n alpha_n) c^{lambda/2} sqrt(Delta0)
//
// omega itself rounds to 1.0 in double precision and is never formed.
struct BoundConstants {
  KernelParams params;
  double b0;
  std::uint64_t gamma_n;
  double alpha_n;
  double ln_alpha_n;
  MomentCase moment_case;
  double rho_prime;
  double ln_B;
  double ln_C;
  bool c_from_b0;  // C was attained by 2/(3 b0) rather than B
  double ln_delta0;
  double ln_d0;
  double ln_ln_inv_omega;
  double ln_ln_inv_omega_prime;
  double ln_amplitude;
  // Rounding residues: field + field_lo equals the defining expression exactly given
  // ln_C, so ln_C cancels without error in L / delta0.
  double ln_delta0_lo;
  double ln_d0_lo;
  double ln_ln_inv_omega_lo;
  double ln_ln_inv_omega_prime_lo;
};

inline constexpr double kDefaultB0 = 1.0;

BoundConstants bound_constants(const KernelParams& params, double b0 = kDefaultB0);

// A spacing (delta or fill distance) that may be far below the smallest double.
class Spacing {
 public:
  static Spacing from_value(double spacing);
  static Spacing from_log(double ln_spacing, double ln_lo = 0.0);
  double ln() const noexcept { return ln_; }
  double ln_lo() const noexcept { return lo_; }

 private:
  Spacing(double ln, double lo) : ln_(ln), lo_(lo) {}
  double ln_;
  double lo_;
};

// delta0 and d0 with their rounding residues.
Spacing delta0_spacing(const BoundConstants& bc);
Spacing d0_spacing(const BoundConstants& bc);

enum class BoundForm { Delta, Fill };

std::string to_string(BoundForm form);

// ln of A * f_norm * e^{-D}, D = L / spacing (delta form) or L' / spacing (fill form).
struct BoundEvaluation {
  BoundForm form;
  double ln_spacing;
  double ln_threshold;          // ln delta0 or ln d0
  bool hypothesis_satisfied;    // spacing <= threshold
  bool forced;                  // evaluated although the hypothesis fails
  double ln_amplitude;
  double f_norm;
  double ln_f_norm;
  double ln_decrement;          // ln D
  double decrement;             // D; +inf when it exceeds double range
  double ln_bound;
};

// Throws HypothesisViolatedError when spacing exceeds delta0 (or d0) unless
// force_hypothesis is set, and DomainError for f_norm < 0.
BoundEvaluation error_bound(const BoundConstants& bc, Spacing spacing, BoundForm form, double f_norm,
                            bool force_hypothesis = false);

// Exact spectral moment M(k) = int_{R^n} |xi|^k dmu(xi) of the Fourier density:
//
//   M(k) = l n alpha_n c^(lambda-k) 2^(k + (n-lambda)/2 - 2) Gamma((k-lambda)/2) Gamma((k+n)/2).
//
// Radial reduction: the density is l r^(-lambda-n) (c r)^nu K_nu(c r), nu = (n+lambda)/2,
// and the surface of the unit sphere is n alpha_n, so
//   M(k) = l n alpha_n c^nu int_0^inf r^(k-lambda-1+nu) K_nu(c r) dr.
// Substituting t = c r gives c^(lambda-k) int_0^inf t^(mu-1) K_nu(t) dt with
// mu = k - lambda + nu, and int t^(mu-1) K_nu = 2^(mu-2) Gamma((mu-nu)/2) Gamma((mu+nu)/2).
// Requires k > lambda.
LogValue moment_exact(const KernelParams& params, int k);

// The same moment by adaptive Gauss-Kronrod quadrature of the radial integrand built
// from fourier_density, truncated where the tail falls below 1e-18 of the integrand
// scale.
double moment_quadrature(const KernelParams& params, int k, double rel_tol = 1e-12);

// l sqrt(pi/2) n alpha_n c^(lambda-k) Delta0 rho^k k!, k >= 2m + 2.
LogValue moment_bound_rhs(const KernelParams& params, int k);

// M(k+1) c / (M(k) (k+1)); the moment bound needs this to stay <= rho.
double moment_growth_ratio(const KernelParams& params, int k);

// (2k)! <= 4^k (k!)^2 for k = 1..k_max, in exact integer arithmetic.
bool verify_lemma23(int k_max);
bool lemma23_holds(int k);

// ln k!, exact integer product for k <= 20, log-gamma above.
double log_factorial(int k);

}  // namespace hspline
