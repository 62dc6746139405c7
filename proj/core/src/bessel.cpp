// Modified Bessel functions of the second kind, integer order.
//
// K0 and K1 come from one of three branches, all computed scaled by e^t:
//
//   t <= 2        power series (Abramowitz & Stegun 9.6.13 / 9.6.11),
//   2 < t < 40    Temme's continued fraction CF2 evaluated by Steed's algorithm,
//   t >= 40       Hankel asymptotic expansion, truncated once terms drop below 1e-17.
//
// The asymptotic series alone cannot reach 1e-11 near t = 2 (its optimal truncation
// error there is of order e^{-2t}), so the continued fraction covers the middle range.
// Higher orders follow from the upward recurrence K_{v+1} = K_{v-1} + (2v/t) K_v, which
// is stable for K.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hspline/errors.hpp"
#include "hspline/kernel.hpp"

namespace hspline {
namespace {

constexpr double kSeriesCrossover = 2.0;
constexpr double kAsymptoticCrossover = 40.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct KPair {
  double k0;
  double k1;
};

// Unscaled K0, K1 for 0 < t <= 2.
KPair series_k01(double t) {
  const double y = 0.25 * t * t;
  const double log_half = std::log(0.5 * t);
  const double euler = std::numbers::egamma;

  // K0 = -(ln(t/2) + gamma) I0(t) + sum_k H_k y^k / (k!)^2
  double term0 = 1.0;  // y^k / (k!)^2
  double i0 = 1.0;
  double harmonic = 0.0;
  double s0 = 0.0;
  // K1 = 1/t + ln(t/2) I1(t) - (t/4) sum_k (psi(k+1) + psi(k+2)) y^k / (k! (k+1)!)
  double term1 = 1.0;  // y^k / (k! (k+1)!)
  double i1_sum = 1.0;
  double s1 = (-euler) + (1.0 - euler);
  for (int k = 1; k < 200; ++k) {
    term0 *= y / (double(k) * k);
    harmonic += 1.0 / k;
    i0 += term0;
    s0 += harmonic * term0;

    term1 *= y / (double(k) * (k + 1));
    i1_sum += term1;
    const double psi_sum = (harmonic - euler) + (harmonic + 1.0 / (k + 1) - euler);
    s1 += psi_sum * term1;

    if (term0 < kEps * 1e-3 * i0 && term1 < kEps * 1e-3 * i1_sum) break;
  }
  const double i1 = 0.5 * t * i1_sum;
  return {-(log_half + euler) * i0 + s0, 1.0 / t + log_half * i1 - 0.25 * t * s1};
}

// e^t K0, e^t K1 for t > 2 via Steed's evaluation of CF2 (order mu = 0).
KPair continued_fraction_k01_scaled(double t) {
  const double a1 = 0.25;
  double b = 2.0 * (1.0 + t);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 10000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * t)) / s;
  return {k0, k0 * (t + 0.5 - h) / t};
}

// e^t K_nu(t) ~ sqrt(pi / 2t) sum_k a_k(nu) / t^k for large t.
double asymptotic_scaled(int nu, double t) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * t);
    if (std::abs(next) > std::abs(term)) break;  // past the smallest term
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * t)) * sum;
}

void check_args(int nu, double t) {
  if (nu < 0) throw DomainError("bessel_k: order must be nonnegative, got " + std::to_string(nu));
  if (!(t > 0.0) || std::isinf(t)) throw DomainError("bessel_k: argument must be finite and > 0");
}

}  // namespace

double bessel_k_scaled(int nu, double t) {
  check_args(nu, t);
  KPair k;
  if (t <= kSeriesCrossover) {
    k = series_k01(t);
    const double scale = std::exp(t);
    k.k0 *= scale;
    k.k1 *= scale;
  } else if (t < kAsymptoticCrossover) {
    k = continued_fraction_k01_scaled(t);
  } else {
    k = {asymptotic_scaled(0, t), asymptotic_scaled(1, t)};
  }
  if (nu == 0) return k.k0;
  double prev = k.k0;
  double cur = k.k1;
  for (int v = 1; v < nu; ++v) {
    const double next = prev + (2.0 * v / t) * cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

double bessel_k(int nu, double t) {
  check_args(nu, t);
  const double decay = std::exp(-t);
  if (decay == 0.0) return 0.0;
  return bessel_k_scaled(nu, t) * decay;
}

}  // namespace hspline
