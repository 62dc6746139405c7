#include "hspline/verification.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "hspline/bounds.hpp"
#include "hspline/kernel.hpp"

namespace hspline {

MomentSuiteReport verify_moments() {
  MomentSuiteReport report;
  const double shifts[] = {0.5, 1.0, 2.0};

  for (int n : {2, 4})
    for (int lambda : {2, 4})
      for (double c : shifts) {
        const KernelParams params(n, lambda, c);
        const int m = params.m();
        for (int k = 2 * m + 2; k <= 2 * m + 6; ++k) {
          MomentOracleCase oc{n, lambda, c, k, moment_exact(params, k).value(), moment_quadrature(params, k), 0.0, false};
          oc.rel_diff = std::abs(oc.quadrature - oc.exact) / oc.exact;
          oc.pass = oc.rel_diff <= 1e-8;
          report.max_oracle_rel_diff = std::max(report.max_oracle_rel_diff, oc.rel_diff);
          report.pass = report.pass && oc.pass;
          report.oracle.push_back(oc);
        }
      }

  for (int n : {2, 4, 6, 8})
    for (int lambda : {2, 4, 6})
      for (double c : shifts) {
        const KernelParams params(n, lambda, c);
        const int m = params.m();
        MomentGrowthCase gc{n, lambda, c, 2 * m + 2, 2 * m + 40, moment_case(n, lambda, m).rho, 0.0, 0, false, 0.0, 0};
        for (int k = gc.k_min; k <= gc.k_max; ++k) {
          const double growth = moment_growth_ratio(params, k);
          if (growth > gc.max_growth_ratio) {
            gc.max_growth_ratio = growth;
            gc.worst_k = k;
          }
          const double bound_ratio = std::exp(moment_exact(params, k).ln - moment_bound_rhs(params, k).ln);
          if (bound_ratio > gc.max_bound_ratio) {
            gc.max_bound_ratio = bound_ratio;
            gc.worst_bound_k = k;
          }
        }
        gc.pass = std::isfinite(gc.max_bound_ratio) && gc.max_growth_ratio <= gc.rho + 1e-9;
        report.max_bound_ratio = std::max(report.max_bound_ratio, gc.max_bound_ratio);
        report.bound_ratio_at_most_one = report.bound_ratio_at_most_one && gc.max_bound_ratio <= 1.0;
        report.pass = report.pass && gc.pass;
        report.growth.push_back(gc);
      }
  return report;
}

PolyBoundSuiteReport verify_polybound(int trials, std::uint64_t seed) {
  PolyBoundSuiteReport report;
  const std::pair<int, int> cases[] = {{1, 0}, {1, 1}, {1, 2}, {2, 1}};
  for (auto [n, k] : cases) {
    const int q = static_cast<int>(gamma_n(n)) * (k + 1);
    report.cases.push_back(polybound_check(n, k, q, trials, seed));
    report.pass = report.pass && report.cases.back().pass;
  }
  return report;
}

Lemma23SuiteReport verify_lemma23_suite(int k_max) {
  namespace mp = boost::multiprecision;
  Lemma23SuiteReport report{k_max, {}, true};
  mp::cpp_int k_fact = 1;
  mp::cpp_int two_k_fact = 1;
  for (int k = 1; k <= k_max; ++k) {
    k_fact *= k;
    two_k_fact *= (2 * k - 1);
    two_k_fact *= (2 * k);
    const mp::cpp_int rhs = (mp::cpp_int(1) << (2 * k)) * k_fact * k_fact;
    const bool holds = two_k_fact <= rhs;
    report.cases.push_back({k, two_k_fact.str(), rhs.str(), holds});
    report.pass = report.pass && holds;
  }
  return report;
}

}  // namespace hspline
