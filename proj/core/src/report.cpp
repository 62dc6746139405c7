#include "hspline/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "hspline/errors.hpp"

namespace hspline {

using nlohmann::json;

namespace {

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json params_json(const KernelParams& p) {
  return {{"n", p.n()}, {"lambda", p.lambda()}, {"c", number(p.c())}, {"m", p.m()}, {"l_const", number(p.l_const())}};
}

const char* kNormNote =
    "semi-norm taken as sqrt(c^T A c) with no extra normalization constant; any missing constant is absorbed "
    "into the slack of the bound";

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // Keep floats recognizable as floats when they happen to be integral.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(std::ostringstream& out, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',' << nl;
        first = false;
        out << pad << json(it.key()).dump() << sep;
        write(out, it.value(), indent, depth + 1);
      }
      out << nl << close_pad << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ',' << nl;
        out << pad;
        write(out, j[i], indent, depth + 1);
      }
      out << nl << close_pad << ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x))
        out << format_double(x);
      else
        out << json(std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf")).dump();
      return;
    }
    default: out << j.dump();
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::ostringstream out;
  write(out, j, indent, 0);
  return out.str();
}

json constants_json(const BoundConstants& bc) {
  const MomentCase& mc = bc.moment_case;
  const double ln_l_inv_omega = bc.ln_ln_inv_omega;
  json j;
  j["params"] = params_json(bc.params);
  j["b0"] = number(bc.b0);
  j["gamma_n"] = bc.gamma_n;
  j["alpha_n"] = number(bc.alpha_n);
  j["moment_case"] = {{"case", std::string(1, to_char(mc.tag))},
                      {"s", mc.s},
                      {"rho", number(mc.rho)},
                      {"rho_rational", std::to_string(mc.rho_num) + "/" + std::to_string(mc.rho_den)},
                      {"delta0_cap", number(mc.delta0_cap)},
                      {"ln_delta0_cap", number(mc.ln_delta0_cap)},
                      {"delta0_cap_exact", mc.delta0_cap_exact}};
  j["rho_prime"] = number(bc.rho_prime);
  j["ln_B"] = number(bc.ln_B);
  j["ln_C"] = number(bc.ln_C);
  j["C_attained_by"] = bc.c_from_b0 ? "2/(3*b0)" : "B";
  j["ln_delta0"] = number(bc.ln_delta0);
  j["ln_d0"] = number(bc.ln_d0);
  j["ln_ln_inv_omega"] = number(ln_l_inv_omega);
  j["ln_ln_inv_omega_prime"] = number(bc.ln_ln_inv_omega_prime);
  j["ln_amplitude"] = number(bc.ln_amplitude);
  j["amplitude"] = number(std::exp(bc.ln_amplitude));
  j["approx"] = {
      {"B", format_scientific_from_log(bc.ln_B)},
      {"C", format_scientific_from_log(bc.ln_C)},
      {"delta0", format_scientific_from_log(bc.ln_delta0)},
      {"d0", format_scientific_from_log(bc.ln_d0)},
      {"ln_inv_omega", format_scientific_from_log(bc.ln_ln_inv_omega)},
      {"ln_inv_omega_prime", format_scientific_from_log(bc.ln_ln_inv_omega_prime)},
      {"amplitude", format_scientific_from_log(bc.ln_amplitude, 6)},
  };
  j["notes"] = {"l_const = " + format_double(bc.params.l_const()) +
                    " (the Fourier constant is not known in closed form; every bound scales with sqrt(l_const))",
                "omega and omega' are 1 - O(ln_inv_omega) and round to 1.0 in double precision; only "
                "ln(1/omega) is stored",
                "b0 = " + format_double(bc.b0)};
  return j;
}

json bound_json(const BoundConstants& bc, const BoundEvaluation& ev) {
  json j;
  j["params"] = params_json(bc.params);
  j["b0"] = number(bc.b0);
  j["form"] = to_string(ev.form);
  j["spacing"] = number(std::exp(ev.ln_spacing));
  j["ln_spacing"] = number(ev.ln_spacing);
  j["threshold"] = ev.form == BoundForm::Delta ? "delta0" : "d0";
  j["ln_threshold"] = number(ev.ln_threshold);
  j["hypothesis_satisfied"] = ev.hypothesis_satisfied;
  j["forced"] = ev.forced;
  j["f_norm"] = number(ev.f_norm);
  j["ln_amplitude"] = number(ev.ln_amplitude);
  j["ln_f_norm"] = number(ev.ln_f_norm);
  j["ln_decrement"] = number(ev.ln_decrement);
  j["decrement"] = number(ev.decrement);
  j["ln_bound"] = number(ev.ln_bound);
  j["bound"] = number(std::exp(ev.ln_bound));
  j["approx"] = {{"threshold", format_scientific_from_log(ev.ln_threshold)},
                 {"decrement", format_scientific_from_log(ev.ln_decrement)},
                 {"bound", format_scientific_from_log(ev.ln_bound, 6)}};
  j["notes"] = {"l_const = " + format_double(bc.params.l_const()), kNormNote};
  if (ev.forced) j["notes"].push_back("hypothesis violated: spacing exceeds the admissible threshold; evaluated on request");
  return j;
}

json rate_fit_json(const RateFit& fit) {
  return {{"slope_vs_inv_d", number(fit.slope_vs_inv_d)},
          {"omega_emp", number(fit.omega_emp)},
          {"r_squared", number(fit.r_squared)},
          {"algebraic_order", number(fit.algebraic_order)},
          {"no_decay", fit.no_decay},
          {"points_used", fit.points_used},
          {"notes", fit.notes}};
}

json level_json(const LevelRecord& level) {
  json j = {{"level", level.level},
            {"delta", number(level.delta)},
            {"N", level.N},
            {"seed", level.seed},
            {"fill_lower", number(level.fill_lower)},
            {"fill_upper", number(level.fill_upper)},
            {"failed", level.failed},
            {"max_error", number(level.max_error)},
            {"condition", number(level.condition)},
            {"condition_warning", level.condition_warning},
            {"forced", level.forced}};
  if (level.failed) j["failure"] = level.failure;
  if (level.certified) {
    const auto& ev = *level.certified;
    j["certified"] = {{"ln_bound", number(ev.ln_bound)},
                      {"bound", number(std::exp(ev.ln_bound))},
                      {"decrement", number(ev.decrement)},
                      {"hypothesis_satisfied", ev.hypothesis_satisfied},
                      {"forced", ev.forced},
                      {"holds", level.bound_holds},
                      {"slack", number(level.bound_slack)}};
  }
  return j;
}

json convergence_config_json(const ConvergenceConfig& config) {
  const CubeDomain cube = config.cube();
  json target = {{"kind", to_string(config.target.kind)}};
  switch (config.target.kind) {
    case TargetKind::Native:
      target["centers"] = config.target.native_centers;
      target["margin"] = number(config.target.native_margin);
      break;
    case TargetKind::Gaussian:
      target["center"] = config.target.gaussian_center;
      target["width"] = number(config.target.gaussian_width);
      break;
    case TargetKind::Polynomial: target["coeffs"] = config.target.polynomial_coeffs; break;
  }
  return {{"n", config.params.n()},
          {"lambda", config.params.lambda()},
          {"c", number(config.params.c())},
          {"l-const", number(config.params.l_const())},
          {"b0", number(config.b0)},
          {"domain-lower", std::vector<double>(cube.lower().data(), cube.lower().data() + cube.dim())},
          {"domain-side", number(cube.side())},
          {"levels", config.levels},
          {"coarsest-spacing", number(config.coarsest_spacing)},
          {"eval-resolution", config.eval_resolution},
          {"fill-resolution", config.fill_resolution},
          {"seed", config.seed},
          {"force-hypothesis", config.force_hypothesis},
          {"force-ill-conditioned", config.force_ill_conditioned},
          {"target", target}};
}

ConvergenceConfig convergence_config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("convergence config must be a JSON object");
  static const char* known[] = {"n", "lambda", "c", "l-const", "b0", "domain-lower", "domain-side", "levels",
                                "coarsest-spacing", "eval-resolution", "fill-resolution", "seed",
                                "force-hypothesis", "force-ill-conditioned", "target", "out"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
      throw InvalidArgument("convergence config: unknown key '" + it.key() + "'");
  }
  try {
    ConvergenceConfig config;
    config.params = KernelParams(j.value("n", 2), j.value("lambda", 2), j.value("c", 1.0), j.value("l-const", 1.0));
    config.b0 = j.value("b0", kDefaultB0);
    if (j.contains("domain-lower") || j.contains("domain-side")) {
      std::vector<double> lower = j.value("domain-lower", std::vector<double>(config.params.n(), 0.0));
      config.domain = CubeDomain(Eigen::Map<Eigen::VectorXd>(lower.data(), static_cast<Eigen::Index>(lower.size())),
                                 j.value("domain-side", 1.0));
    }
    config.levels = j.value("levels", config.levels);
    config.coarsest_spacing = j.value("coarsest-spacing", config.coarsest_spacing);
    config.eval_resolution = j.value("eval-resolution", config.eval_resolution);
    config.fill_resolution = j.value("fill-resolution", config.fill_resolution);
    config.seed = j.value("seed", config.seed);
    config.force_hypothesis = j.value("force-hypothesis", config.force_hypothesis);
    config.force_ill_conditioned = j.value("force-ill-conditioned", config.force_ill_conditioned);
    if (j.contains("target")) {
      const json& t = j.at("target");
      if (t.is_string()) {
        config.target.kind = parse_target_kind(t.get<std::string>());
      } else {
        config.target.kind = parse_target_kind(t.value("kind", std::string("native")));
        config.target.native_centers = t.value("centers", config.target.native_centers);
        config.target.native_margin = t.value("margin", config.target.native_margin);
        config.target.gaussian_center = t.value("center", std::vector<double>{});
        config.target.gaussian_width = t.value("width", config.target.gaussian_width);
        config.target.polynomial_coeffs = t.value("coeffs", std::vector<double>{});
      }
    }
    return config;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("convergence config: ") + e.what());
  }
}

json convergence_json(const ConvergenceReport& report) {
  json j;
  j["config"] = convergence_config_json(report.config);
  j["generator"] = {{"kind", "jittered"}, {"seed", report.config.seed}, {"level_seed", "seed + level"}};
  j["constants"] = constants_json(report.constants);
  if (report.f_norm) j["f_norm"] = number(*report.f_norm);
  j["levels"] = json::array();
  for (const auto& level : report.levels) j["levels"].push_back(level_json(level));
  if (report.fitted) j["fitted"] = rate_fit_json(*report.fitted);
  if (!report.fit_note.empty()) j["fit_note"] = report.fit_note;
  j["theoretical_rate"] = {{"ln_ln_inv_omega_prime", number(report.constants.ln_ln_inv_omega_prime)},
                           {"ln_inv_omega_prime", format_scientific_from_log(report.constants.ln_ln_inv_omega_prime)},
                           {"note", "omega' = exp(-ln_inv_omega_prime) is indistinguishable from 1 at desk scale"}};
  j["notes"] = {kNormNote, "d per level is the upper fill-distance bracket"};
  if (!report.f_norm) j["notes"].push_back("f_norm unknown for this target; bound available per unit norm only");
  return j;
}

json moments_json(const MomentSuiteReport& report) {
  json oracle = json::array();
  for (const auto& oc : report.oracle)
    oracle.push_back({{"n", oc.n}, {"lambda", oc.lambda}, {"c", number(oc.c)}, {"k", oc.k},
                      {"exact", number(oc.exact)}, {"quadrature", number(oc.quadrature)},
                      {"rel_diff", number(oc.rel_diff)}, {"pass", oc.pass}});
  json growth = json::array();
  for (const auto& gc : report.growth)
    growth.push_back({{"n", gc.n}, {"lambda", gc.lambda}, {"c", number(gc.c)}, {"k_min", gc.k_min},
                      {"k_max", gc.k_max}, {"rho", number(gc.rho)}, {"max_growth_ratio", number(gc.max_growth_ratio)},
                      {"worst_k", gc.worst_k}, {"max_bound_ratio", number(gc.max_bound_ratio)},
                      {"worst_bound_k", gc.worst_bound_k}, {"pass", gc.pass}});
  return {{"suite", "moments"},
          {"pass", report.pass},
          {"max_oracle_rel_diff", number(report.max_oracle_rel_diff)},
          {"max_bound_ratio", number(report.max_bound_ratio)},
          {"bound_ratio_at_most_one", report.bound_ratio_at_most_one},
          {"oracle", oracle},
          {"growth", growth}};
}

json polybound_json(const PolyBoundSuiteReport& report) {
  json cases = json::array();
  for (const auto& pc : report.cases)
    cases.push_back({{"n", pc.n}, {"k", pc.k}, {"q", pc.q}, {"trials", pc.trials},
                     {"samples_per_axis", pc.samples_per_axis}, {"max_ratio", number(pc.max_ratio)},
                     {"ln_bound", number(pc.ln_bound)}, {"bound", format_scientific_from_log(pc.ln_bound)},
                     {"pass", pc.pass}});
  return {{"suite", "polybound"}, {"pass", report.pass}, {"cases", cases}};
}

json lemma23_json(const Lemma23SuiteReport& report) {
  json cases = json::array();
  for (const auto& lc : report.cases)
    cases.push_back({{"k", lc.k}, {"two_k_factorial", lc.two_k_factorial},
                     {"four_k_k_factorial_squared", lc.four_k_times_k_factorial_squared}, {"holds", lc.holds}});
  return {{"suite", "lemma23"}, {"pass", report.pass}, {"k_max", report.k_max}, {"cases", cases}};
}

std::string levels_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "delta,N,fill_upper,max_error,condition\n";
  for (const auto& l : report.levels) {
    out << format_double(l.delta) << ',' << l.N << ',' << format_double(l.fill_upper) << ','
        << (l.failed ? std::string("nan") : format_double(l.max_error)) << ',' << format_double(l.condition) << '\n';
  }
  return out.str();
}

}  // namespace hspline
