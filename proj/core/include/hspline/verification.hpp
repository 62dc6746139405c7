#pragma once

#include <string>
#include <vector>

#include "hspline/polynomials.hpp"

namespace hspline {

struct MomentOracleCase {
  int n, lambda;
  double c;
  int k;
  double exact;
  double quadrature;
  double rel_diff;
  bool pass;
};

struct MomentGrowthCase {
  int n, lambda;
  double c;
  int k_min, k_max;
  double rho;
  double max_growth_ratio;  // max_k M(k+1) c / (M(k) (k+1))
  int worst_k;
  bool pass;                // max_growth_ratio <= rho + 1e-9
  double max_bound_ratio;   // max_k M(k) / RHS(k)
  int worst_bound_k;
};

struct MomentSuiteReport {
  std::vector<MomentOracleCase> oracle;
  std::vector<MomentGrowthCase> growth;
  double max_oracle_rel_diff = 0.0;
  double max_bound_ratio = 0.0;
  bool bound_ratio_at_most_one = true;  // recorded, not required
  bool pass = true;
};

// oracle: (n, lambda, c) in {2,4} x {2,4} x {0.5,1,2}, k in [2m+2, 2m+6], 1e-8 relative.
// growth and bound audit: {2,4,6,8} x {2,4,6} x {0.5,1,2}, k in [2m+2, 2m+40].
MomentSuiteReport verify_moments();

struct PolyBoundSuiteReport {
  std::vector<PolyBoundReport> cases;
  bool pass = true;
};

// (n=1, k=0..2) and (n=2, k=1) with q = gamma_n (k+1).
PolyBoundSuiteReport verify_polybound(int trials = 200, std::uint64_t seed = 20240601);

struct Lemma23Case {
  int k;
  std::string two_k_factorial;
  std::string four_k_times_k_factorial_squared;
  bool holds;
};

struct Lemma23SuiteReport {
  int k_max;
  std::vector<Lemma23Case> cases;
  bool pass = true;
};

Lemma23SuiteReport verify_lemma23_suite(int k_max = 40);

}  // namespace hspline
