#include "hspline/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "hspline/errors.hpp"
#include "hspline/polynomials.hpp"

namespace hspline {

namespace mp = boost::multiprecision;

double LogValue::value() const { return std::exp(ln); }

std::string format_scientific_from_log(double ln_x, int significant_digits) {
  if (std::isnan(ln_x)) return "nan";
  if (ln_x == -std::numeric_limits<double>::infinity()) return "0";
  if (ln_x == std::numeric_limits<double>::infinity()) return "inf";
  const double log10_x = ln_x / std::numbers::ln10;
  double exponent = std::floor(log10_x);
  double mantissa = std::pow(10.0, log10_x - exponent);
  const double rounding = std::pow(10.0, significant_digits - 1);
  mantissa = std::round(mantissa * rounding) / rounding;
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*fe%+03.0f", std::max(0, significant_digits - 1), mantissa, exponent);
  return buf;
}

char to_char(MomentCaseTag tag) {
  switch (tag) {
    case MomentCaseTag::A: return 'a';
    case MomentCaseTag::B: return 'b';
    case MomentCaseTag::C: return 'c';
  }
  return '?';
}

double log_factorial(int k) {
  if (k < 0) throw DomainError("log_factorial: negative argument");
  if (k <= 20) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return std::log(static_cast<double>(f));
  }
  return std::lgamma(k + 1.0);
}

namespace {

// ceil(a / 2) for integer a, rounding toward +infinity for negatives too.
int ceil_half(int a) { return (a >= 0) ? (a + 1) / 2 : -((-a) / 2); }

// Knuth's error-free sum: hi + lo == a + b exactly.
std::pair<double, double> two_sum(double a, double b) {
  const double hi = a + b;
  const double bb = hi - a;
  const double lo = (a - (hi - bb)) + (b - bb);
  return {hi, lo};
}

double rational_to_double(const mp::cpp_rational& r) { return r.convert_to<double>(); }

double rational_log(const mp::cpp_rational& r) {
  // Both parts are far inside double range for the supported parameters; fall back
  // to a digit-count split if that ever changes.
  const mp::cpp_int num = mp::numerator(r);
  const mp::cpp_int den = mp::denominator(r);
  auto log_int = [](const mp::cpp_int& v) {
    const double d = v.convert_to<double>();
    if (std::isfinite(d)) return std::log(d);
    const std::size_t bits = mp::msb(v);
    const mp::cpp_int top = v >> (bits - 60);
    return std::log(top.convert_to<double>()) + static_cast<double>(bits - 60) * std::numbers::ln2;
  };
  return log_int(num) - log_int(den);
}

std::string rational_string(const mp::cpp_rational& r) {
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

}  // namespace

MomentCase moment_case(int n, int lambda, int m) {
  if (m != 1 + lambda / 2) throw InvalidArgument("moment_case: m must equal 1 + lambda/2");
  const int diff = n - lambda;
  MomentCase out{};
  mp::cpp_rational delta0;
  if (diff > 3) {
    out.tag = MomentCaseTag::A;
    out.s = ceil_half(diff - 3);
    out.rho_num = 2 * m + 3 + out.s;
    out.rho_den = 2 * m + 3;
    mp::cpp_int product = 1;
    for (int f = 2 * m + 3; f <= 2 * m + 2 + out.s; ++f) product *= f;
    const mp::cpp_rational rho(mp::cpp_int(out.rho_num), mp::cpp_int(out.rho_den));
    mp::cpp_rational rho_power = 1;
    for (int i = 0; i < 2 * m + 2; ++i) rho_power *= rho;
    delta0 = mp::cpp_rational(product) / rho_power;
  } else if (diff <= 1) {
    out.tag = MomentCaseTag::B;
    out.s = -ceil_half(diff - 3);
    out.rho_num = 1;
    out.rho_den = 1;
    mp::cpp_int product = 1;
    for (int f = 2 * m - out.s + 3; f <= 2 * m + 2; ++f) product *= f;
    delta0 = mp::cpp_rational(mp::cpp_int(1), product);
  } else {
    out.tag = MomentCaseTag::C;
    out.s = 0;
    out.rho_num = 1;
    out.rho_den = 1;
    delta0 = 1;
  }
  out.rho = static_cast<double>(out.rho_num) / static_cast<double>(out.rho_den);
  out.delta0_cap = rational_to_double(delta0);
  out.ln_delta0_cap = rational_log(delta0);
  out.delta0_cap_exact = rational_string(delta0);
  return out;
}

BoundConstants bound_constants(const KernelParams& params, double b0) {
  if (!(b0 > 0.0) || !std::isfinite(b0)) throw DomainError("bound_constants: b0 must be finite and > 0");
  const int n = params.n();
  const int m = params.m();

  BoundConstants bc{params, b0, gamma_n(n), 0.0, 0.0, moment_case(n, params.lambda(), m), 0.0, 0.0, 0.0, false,
                    0.0,    0.0, 0.0,        0.0, 0.0, 0.0,   0.0, 0.0,   0.0};
  const auto gamma = static_cast<double>(bc.gamma_n);

  bc.ln_alpha_n = 0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0);
  bc.alpha_n = std::exp(bc.ln_alpha_n);
  bc.rho_prime = bc.moment_case.rho / params.c();

  bc.ln_B = std::log(2.0 * bc.rho_prime * std::sqrt(static_cast<double>(n))) + 2.0 * n * gamma;
  const double ln_b0_term = std::log(2.0 / (3.0 * b0));
  bc.c_from_b0 = ln_b0_term > bc.ln_B;
  bc.ln_C = std::max(bc.ln_B, ln_b0_term);

  std::tie(bc.ln_delta0, bc.ln_delta0_lo) = two_sum(-std::log(3.0 * gamma * (m + 1)), -bc.ln_C);
  std::tie(bc.ln_d0, bc.ln_d0_lo) = two_sum(bc.ln_delta0, -std::numbers::ln2);
  bc.ln_d0_lo += bc.ln_delta0_lo;
  std::tie(bc.ln_ln_inv_omega, bc.ln_ln_inv_omega_lo) =
      two_sum(std::log(std::log(1.5)) - std::log(3.0 * gamma), -bc.ln_C);
  std::tie(bc.ln_ln_inv_omega_prime, bc.ln_ln_inv_omega_prime_lo) = two_sum(bc.ln_ln_inv_omega, -std::numbers::ln2);
  bc.ln_ln_inv_omega_prime_lo += bc.ln_ln_inv_omega_lo;

  bc.ln_amplitude = 0.5 * std::log(params.l_const()) + 0.25 * std::log(0.5 * std::numbers::pi) +
                    0.5 * (std::log(static_cast<double>(n)) + bc.ln_alpha_n) +
                    0.5 * params.lambda() * std::log(params.c()) + 0.5 * bc.moment_case.ln_delta0_cap;
  return bc;
}

Spacing Spacing::from_value(double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw DomainError("spacing must be finite and > 0");
  return Spacing(std::log(spacing), 0.0);
}

Spacing Spacing::from_log(double ln_spacing, double ln_lo) {
  if (!std::isfinite(ln_spacing) || !std::isfinite(ln_lo)) throw DomainError("ln spacing must be finite");
  return Spacing(ln_spacing, ln_lo);
}

Spacing delta0_spacing(const BoundConstants& bc) { return Spacing::from_log(bc.ln_delta0, bc.ln_delta0_lo); }

Spacing d0_spacing(const BoundConstants& bc) { return Spacing::from_log(bc.ln_d0, bc.ln_d0_lo); }

std::string to_string(BoundForm form) { return form == BoundForm::Delta ? "delta" : "fill"; }

BoundEvaluation error_bound(const BoundConstants& bc, Spacing spacing, BoundForm form, double f_norm,
                            bool force_hypothesis) {
  if (!(f_norm >= 0.0) || std::isinf(f_norm)) throw DomainError("error_bound: f_norm must be finite and >= 0");

  BoundEvaluation ev{};
  ev.form = form;
  ev.ln_spacing = spacing.ln();
  ev.ln_threshold = (form == BoundForm::Delta) ? bc.ln_delta0 : bc.ln_d0;
  // Allow a few ulps so that passing exp(ln delta0) back in is accepted.
  ev.hypothesis_satisfied = ev.ln_spacing <= ev.ln_threshold + 1e-12 * std::max(1.0, std::abs(ev.ln_threshold));
  if (!ev.hypothesis_satisfied) {
    const std::string name = (form == BoundForm::Delta) ? "delta0" : "d0";
    if (!force_hypothesis)
      throw HypothesisViolatedError("error_bound: spacing " + format_scientific_from_log(ev.ln_spacing) +
                                        " exceeds " + name + " = " + format_scientific_from_log(ev.ln_threshold),
                                    ev.ln_threshold);
    ev.forced = true;
  }

  const bool delta = form == BoundForm::Delta;
  const double ln_rate = delta ? bc.ln_ln_inv_omega : bc.ln_ln_inv_omega_prime;
  const double ln_rate_lo = delta ? bc.ln_ln_inv_omega_lo : bc.ln_ln_inv_omega_prime_lo;
  // Both leading terms sit next to -ln C, so their difference is exact.
  ev.ln_decrement = (ln_rate - ev.ln_spacing) + (ln_rate_lo - spacing.ln_lo());
  // exp overflows to +inf and underflows to 0, both of which are the right limits.
  ev.decrement = std::exp(ev.ln_decrement);
  ev.ln_amplitude = bc.ln_amplitude;
  ev.f_norm = f_norm;
  ev.ln_f_norm = (f_norm == 0.0) ? -std::numeric_limits<double>::infinity() : std::log(f_norm);
  ev.ln_bound = ev.ln_amplitude + ev.ln_f_norm - ev.decrement;
  return ev;
}

bool lemma23_holds(int k) {
  if (k < 1) throw DomainError("lemma23_holds: k must be >= 1");
  mp::cpp_int k_fact = 1;
  for (int i = 2; i <= k; ++i) k_fact *= i;
  mp::cpp_int two_k_fact = k_fact;
  for (int i = k + 1; i <= 2 * k; ++i) two_k_fact *= i;
  const mp::cpp_int four_k = mp::cpp_int(1) << (2 * k);
  return two_k_fact <= four_k * k_fact * k_fact;
}

bool verify_lemma23(int k_max) {
  if (k_max < 1) throw DomainError("verify_lemma23: k_max must be >= 1");
  for (int k = 1; k <= k_max; ++k)
    if (!lemma23_holds(k)) return false;
  return true;
}

}  // namespace hspline
