#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "hspline/bounds.hpp"
#include "hspline/errors.hpp"

using namespace hspline;
using boost::multiprecision::cpp_bin_float_50;

namespace {

const double kLn15 = std::log(1.5);

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST(MomentCase, Examples) {
  auto b = moment_case(2, 2, 2);
  EXPECT_EQ(b.tag, MomentCaseTag::B);
  EXPECT_EQ(b.s, 1);
  EXPECT_EQ(b.rho, 1.0);
  EXPECT_EQ(b.delta0_cap_exact, "1/6");
  EXPECT_NEAR(b.delta0_cap, 1.0 / 6.0, 1e-16);

  auto b4 = moment_case(2, 4, 3);
  EXPECT_EQ(b4.tag, MomentCaseTag::B);
  EXPECT_EQ(b4.delta0_cap_exact, "1/56");

  auto c = moment_case(4, 2, 2);
  EXPECT_EQ(c.tag, MomentCaseTag::C);
  EXPECT_EQ(c.s, 0);
  EXPECT_EQ(c.rho, 1.0);
  EXPECT_EQ(c.delta0_cap, 1.0);

  auto a = moment_case(8, 2, 2);
  EXPECT_EQ(a.tag, MomentCaseTag::A);
  EXPECT_EQ(a.s, 2);
  EXPECT_EQ(a.rho_num, 9);
  EXPECT_EQ(a.rho_den, 7);
  EXPECT_LT(rel_err(a.delta0_cap, 12.397131572460536541), 1e-14);
}

TEST(MomentCase, SplitIsExhaustiveAndExclusive) {
  for (int n = 2; n <= 20; n += 2)
    for (int lambda = 2; lambda <= 20; lambda += 2) {
      const auto mc = moment_case(n, lambda, 1 + lambda / 2);
      const int d = n - lambda;
      const int conditions = (d > 3) + (d <= 1) + (d > 1 && d <= 3);
      EXPECT_EQ(conditions, 1);
      const MomentCaseTag expect = d > 3 ? MomentCaseTag::A : d <= 1 ? MomentCaseTag::B : MomentCaseTag::C;
      EXPECT_EQ(mc.tag, expect);
      EXPECT_GE(mc.rho, 1.0);
      EXPECT_GT(mc.delta0_cap, 0.0);
      EXPECT_NEAR(std::log(mc.delta0_cap), mc.ln_delta0_cap, 1e-12);
    }
}

TEST(BoundConstants, ReferenceSet) {
  const auto bc = bound_constants(KernelParams(2, 2, 1.0), 1.0);
  EXPECT_EQ(bc.gamma_n, 12u);
  EXPECT_NEAR(bc.alpha_n, std::numbers::pi, 1e-15);
  EXPECT_EQ(bc.rho_prime, 1.0);
  EXPECT_NEAR(bc.ln_B, 49.039720770839917964, 1e-12);
  EXPECT_NEAR(bc.ln_B, 48.0 + std::log(2.0 * std::sqrt(2.0)), 1e-12);
  EXPECT_EQ(bc.ln_C, bc.ln_B);
  EXPECT_FALSE(bc.c_from_b0);
  EXPECT_LT(rel_err(std::exp(bc.ln_delta0), 4.6654777185630607011e-24), 1e-12);
  EXPECT_LT(rel_err(std::exp(bc.ln_ln_inv_omega), 5.6750652826002105781e-24), 1e-12);
  EXPECT_LT(rel_err(std::exp(bc.ln_amplitude), 1.1456297375142059012), 1e-13);
  EXPECT_EQ(format_scientific_from_log(bc.ln_delta0), "4.67e-24");
  EXPECT_EQ(format_scientific_from_log(bc.ln_B, 5), "1.9846e+21");
}

TEST(BoundConstants, ExtendedPrecisionOracle) {
  // Independent 50-digit evaluation of the defining formulas.
  for (int n : {2, 4, 6, 8, 10})
    for (int lambda : {2, 4, 6, 8, 10})
      for (double c : {0.25, 1.0, 3.0}) {
        const KernelParams p(n, lambda, c);
        const auto bc = bound_constants(p, 1.0);
        const int m = p.m();
        const cpp_bin_float_50 pi = boost::math::constants::pi<cpp_bin_float_50>();
        const cpp_bin_float_50 g = static_cast<double>(bc.gamma_n);
        const cpp_bin_float_50 rho = cpp_bin_float_50(bc.moment_case.rho_num) / bc.moment_case.rho_den;
        const cpp_bin_float_50 lnB = log(2 * rho / c * sqrt(cpp_bin_float_50(n))) + 2 * n * g;
        const cpp_bin_float_50 lnC = std::max(lnB, log(cpp_bin_float_50(2) / 3));
        const cpp_bin_float_50 half_n = cpp_bin_float_50(n) / 2;
        const cpp_bin_float_50 ln_alpha = half_n * log(pi) - boost::math::lgamma(half_n + 1);
        EXPECT_NEAR(bc.ln_B, static_cast<double>(lnB), 1e-12 * std::max(1.0, bc.ln_B));
        EXPECT_NEAR(bc.ln_delta0, static_cast<double>(-log(3 * g * (m + 1)) - lnC), 1e-12 * std::abs(bc.ln_delta0));
        EXPECT_NEAR(bc.ln_ln_inv_omega, static_cast<double>(log(log(cpp_bin_float_50(1.5))) - log(3 * g) - lnC),
                    1e-12 * std::abs(bc.ln_ln_inv_omega));
        EXPECT_NEAR(bc.ln_alpha_n, static_cast<double>(ln_alpha), 1e-13);
        const cpp_bin_float_50 lnA = log(pi / 2) / 4 + log(n * exp(ln_alpha)) / 2 + (lambda / 2.0) * log(cpp_bin_float_50(c)) +
                                     cpp_bin_float_50(bc.moment_case.ln_delta0_cap) / 2;
        EXPECT_NEAR(bc.ln_amplitude, static_cast<double>(lnA), 1e-12);
      }
}

TEST(BoundConstants, LogIdentitiesAndFiniteness) {
  for (int n = 2; n <= 10; n += 2)
    for (int lambda = 2; lambda <= 10; lambda += 2)
      for (double b0 : {1e-30, 0.1, 1.0, 1e30}) {
        const KernelParams p(n, lambda, 0.8, 2.5);
        const auto bc = bound_constants(p, b0);
        for (double v : {bc.ln_B, bc.ln_C, bc.ln_delta0, bc.ln_d0, bc.ln_ln_inv_omega, bc.ln_ln_inv_omega_prime,
                         bc.ln_amplitude, bc.rho_prime, bc.alpha_n})
          EXPECT_TRUE(std::isfinite(v));
        const double g = static_cast<double>(bc.gamma_n);
        EXPECT_GE(bc.ln_C, bc.ln_B);
        EXPECT_GE(bc.ln_C, std::log(2.0 / (3.0 * b0)));
        EXPECT_TRUE(bc.ln_C == bc.ln_B || bc.ln_C == std::log(2.0 / (3.0 * b0)));
        EXPECT_NEAR(bc.ln_delta0, -std::log(3.0 * g * (p.m() + 1)) - bc.ln_C, 1e-12);
        EXPECT_NEAR(bc.ln_ln_inv_omega, std::log(kLn15) - std::log(3.0 * g) - bc.ln_C, 1e-12);
        EXPECT_NEAR(bc.ln_ln_inv_omega_prime, bc.ln_ln_inv_omega - std::numbers::ln2, 1e-12);
        EXPECT_NEAR(bc.ln_d0, bc.ln_delta0 - std::numbers::ln2, 1e-12);
      }
}

TEST(BoundConstants, LargeDimensionOnlyInLogSpace) {
  const auto bc = bound_constants(KernelParams(4, 2, 1.0));
  EXPECT_EQ(bc.gamma_n, 632u);
  EXPECT_NEAR(bc.ln_B, 5056.0 + std::log(4.0), 1e-9);
  EXPECT_NEAR(bc.ln_B, 5057.3862943611198906, 1e-9);
  EXPECT_TRUE(std::isinf(LogValue{bc.ln_B}.value()));
}

TEST(BoundConstants, B0OnlyMattersWhenItDominates) {
  const KernelParams p(2, 2, 1.0);
  EXPECT_EQ(bound_constants(p, 1e30).ln_C, bound_constants(p, 1.0).ln_C);
  const auto tiny = bound_constants(p, 1e-30);
  EXPECT_TRUE(tiny.c_from_b0);
  EXPECT_NEAR(tiny.ln_C, std::log(2.0 / 3e-30), 1e-12);
  EXPECT_THROW(bound_constants(p, 0.0), DomainError);
  EXPECT_THROW(bound_constants(p, -1.0), DomainError);
}

TEST(BoundConstants, OmegaMovesTowardOneAsCGrows) {
  const KernelParams p(2, 2, 1.0);
  // b0 small enough to make 2/(3 b0) the larger term.
  const auto a = bound_constants(p, 1e-25), b = bound_constants(p, 1e-26), c = bound_constants(p, 1e-27);
  EXPECT_GT(a.ln_ln_inv_omega, b.ln_ln_inv_omega);
  EXPECT_GT(b.ln_ln_inv_omega, c.ln_ln_inv_omega);
  const auto d = bound_constants(p, 0.1), e = bound_constants(p, 1.0), f = bound_constants(p, 10.0);
  EXPECT_GE(d.ln_ln_inv_omega, e.ln_ln_inv_omega);
  EXPECT_EQ(e.ln_ln_inv_omega, f.ln_ln_inv_omega);
}

TEST(ErrorBound, ReferenceAtThreshold) {
  const auto bc = bound_constants(KernelParams(2, 2, 1.0));
  const auto ev = error_bound(bc, delta0_spacing(bc), BoundForm::Delta, 1.0);
  EXPECT_TRUE(ev.hypothesis_satisfied);
  EXPECT_NEAR(ev.decrement, 3.0 * kLn15, 1e-12);
  EXPECT_NEAR(ev.decrement, 1.2163953243244931459, 1e-12);
  EXPECT_LT(rel_err(std::exp(ev.ln_bound), 0.33944584815235730407), 1e-12);
}

TEST(ErrorBound, DecrementAtThresholdDependsOnlyOnOrder) {
  // L / delta0 = (m + 1) ln(3/2); C and gamma_n cancel.
  for (int n = 2; n <= 10; n += 2)
    for (int lambda = 2; lambda <= 10; lambda += 2)
      for (double c : {0.1, 1.0, 7.0})
        for (double b0 : {1e-40, 1.0}) {
          const KernelParams p(n, lambda, c);
          const auto bc = bound_constants(p, b0);
          const auto ev = error_bound(bc, delta0_spacing(bc), BoundForm::Delta, 1.0);
          EXPECT_NEAR(ev.decrement, (p.m() + 1) * kLn15, 1e-12);
          const auto evf = error_bound(bc, d0_spacing(bc), BoundForm::Fill, 1.0);
          EXPECT_NEAR(evf.decrement, (p.m() + 1) * kLn15, 1e-12);
        }
}

TEST(ErrorBound, HypothesisAndDomain) {
  const auto bc = bound_constants(KernelParams(2, 2, 1.0));
  const auto twice = Spacing::from_log(bc.ln_delta0 + std::numbers::ln2);
  EXPECT_THROW(error_bound(bc, twice, BoundForm::Delta, 1.0), HypothesisViolatedError);
  // delta0 itself is admissible for the delta form but exceeds d0.
  EXPECT_THROW(error_bound(bc, Spacing::from_log(bc.ln_delta0), BoundForm::Fill, 1.0), HypothesisViolatedError);
  try {
    error_bound(bc, twice, BoundForm::Delta, 1.0);
  } catch (const HypothesisViolatedError& e) {
    EXPECT_EQ(e.ln_threshold(), bc.ln_delta0);
  }
  const auto forced = error_bound(bc, Spacing::from_value(0.25), BoundForm::Fill, 2.0, true);
  EXPECT_TRUE(forced.forced);
  EXPECT_FALSE(forced.hypothesis_satisfied);
  EXPECT_NEAR(forced.ln_bound, bc.ln_amplitude + std::log(2.0) - 4.0 * std::exp(bc.ln_ln_inv_omega_prime), 1e-15);
  EXPECT_THROW(error_bound(bc, Spacing::from_value(0.25), BoundForm::Fill, -1.0, true), DomainError);
  EXPECT_THROW(Spacing::from_value(0.0), DomainError);
}

TEST(ErrorBound, ZeroNormAndHugeDecrement) {
  const auto bc = bound_constants(KernelParams(4, 2, 1.0));
  const auto zero = error_bound(bc, Spacing::from_log(bc.ln_delta0), BoundForm::Delta, 0.0);
  EXPECT_TRUE(std::isinf(zero.ln_bound) && zero.ln_bound < 0);
  const auto tiny = error_bound(bc, Spacing::from_log(bc.ln_delta0 - 800.0), BoundForm::Delta, 1.0);
  EXPECT_TRUE(std::isinf(tiny.decrement));
  EXPECT_TRUE(std::isinf(tiny.ln_bound) && tiny.ln_bound < 0);
  EXPECT_NEAR(tiny.ln_decrement, std::log(3.0 * kLn15) + 800.0, 1e-9);
}

TEST(Moments, ReferenceValue) {
  const KernelParams p(2, 2, 1.0);
  EXPECT_LT(rel_err(moment_exact(p, 6).value(), 192.0 * std::numbers::pi), 1e-13);
  EXPECT_LT(rel_err(moment_quadrature(p, 6), 603.18578948924030178), 1e-10);
  EXPECT_LT(rel_err(moment_bound_rhs(p, 6).value(), 944.97659674334518466), 1e-13);
  EXPECT_NEAR(moment_exact(p, 6).value() / moment_bound_rhs(p, 6).value(), 0.6383076486422922847, 1e-13);
}

TEST(Moments, LinearInLAndScalingInC) {
  const KernelParams p(4, 2, 1.0), p2(4, 2, 1.0, 2.0);
  for (int k = 6; k < 12; ++k) {
    EXPECT_NEAR(moment_exact(p2, k).ln - moment_exact(p, k).ln, std::numbers::ln2, 1e-12);
    for (double c : {0.5, 2.0}) {
      const KernelParams pc(4, 2, c);
      EXPECT_NEAR(moment_exact(pc, k).ln, moment_exact(p, k).ln + (2 - k) * std::log(c), 1e-12);
      EXPECT_LT(rel_err(moment_quadrature(pc, k), std::pow(c, 2 - k) * moment_quadrature(p, k)), 1e-9);
    }
  }
}

TEST(Moments, QuadratureMatchesClosedForm) {
  for (int n : {2, 4})
    for (int lambda : {2, 4})
      for (double c : {0.5, 1.0, 2.0}) {
        const KernelParams p(n, lambda, c);
        for (int k = 2 * p.m() + 2; k <= 2 * p.m() + 6; ++k)
          EXPECT_LT(rel_err(moment_quadrature(p, k), moment_exact(p, k).value()), 1e-8) << n << lambda << c << k;
      }
}

TEST(Moments, GrowthRatioBelowRho) {
  for (int n : {2, 4, 6, 8})
    for (int lambda : {2, 4, 6})
      for (double c : {0.5, 1.0, 2.0}) {
        const KernelParams p(n, lambda, c);
        const double rho = moment_case(n, lambda, p.m()).rho;
        for (int k = 2 * p.m() + 2; k <= 2 * p.m() + 40; ++k) EXPECT_LE(moment_growth_ratio(p, k), rho + 1e-9);
      }
}

TEST(Moments, Errors) {
  const KernelParams p(2, 4, 1.0);
  EXPECT_THROW(moment_exact(p, 4), DivergentMomentError);
  EXPECT_NO_THROW(moment_exact(p, 5));
  EXPECT_THROW(moment_bound_rhs(p, 2 * p.m() + 1), PreconditionError);
  EXPECT_NO_THROW(moment_bound_rhs(p, 2 * p.m() + 2));
}

TEST(Lemma23, ExactIntegers) {
  EXPECT_TRUE(lemma23_holds(1));
  EXPECT_TRUE(lemma23_holds(5));
  EXPECT_TRUE(verify_lemma23(40));
  EXPECT_TRUE(verify_lemma23(200));
}

TEST(LogFactorial, ExactAndGammaBranches) {
  EXPECT_EQ(log_factorial(0), 0.0);
  EXPECT_NEAR(log_factorial(5), std::log(120.0), 1e-15);
  EXPECT_NEAR(log_factorial(20), std::log(2432902008176640000.0), 1e-13);
  EXPECT_NEAR(log_factorial(21), std::lgamma(22.0), 1e-12);
  EXPECT_NEAR(log_factorial(100), 363.73937555556349014, 1e-11);
}

TEST(LogFormat, RendersWithoutMaterializing) {
  EXPECT_EQ(format_scientific_from_log(std::log(1234.5), 3), "1.23e+03");
  EXPECT_EQ(format_scientific_from_log(5056.0 + std::log(4.0), 3), "2.48e+2196");
  EXPECT_EQ(format_scientific_from_log(-std::numeric_limits<double>::infinity()), "0");
}
