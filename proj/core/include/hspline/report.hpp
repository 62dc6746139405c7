#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hspline/bounds.hpp"
#include "hspline/convergence.hpp"
#include "hspline/verification.hpp"

namespace hspline {

// JSON documents for the command-line tool. Log-space quantities are emitted as
// numbers next to a rendered "approx" string; non-finite numbers become the strings
// "inf", "-inf" or "nan".
nlohmann::json constants_json(const BoundConstants& bc);
nlohmann::json bound_json(const BoundConstants& bc, const BoundEvaluation& ev);
nlohmann::json convergence_json(const ConvergenceReport& report);
nlohmann::json level_json(const LevelRecord& level);
nlohmann::json rate_fit_json(const RateFit& fit);
nlohmann::json moments_json(const MomentSuiteReport& report);
nlohmann::json polybound_json(const PolyBoundSuiteReport& report);
nlohmann::json lemma23_json(const Lemma23SuiteReport& report);

// Parses a convergence configuration. Keys mirror the command-line flags:
// n, lambda, c, b0, l-const, levels, coarsest-spacing, domain-lower, domain-side,
// eval-resolution, fill-resolution, seed, force-hypothesis, force-ill-conditioned,
// target {kind, centers, margin, center, width, coeffs}.
ConvergenceConfig convergence_config_from_json(const nlohmann::json& j);
nlohmann::json convergence_config_json(const ConvergenceConfig& config);

// Serializes with every floating-point number printed to 17 significant digits.
std::string dump_json(const nlohmann::json& j, int indent = 2);

// "delta,N,fill_upper,max_error,condition" rows, 17 significant digits.
std::string levels_csv(const ConvergenceReport& report);

}  // namespace hspline
