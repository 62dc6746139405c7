// hspline: constants, bounds, interpolation, convergence experiments and verification
// suites from the command line. Every document goes to stdout as JSON; errors go to
// stderr as {"error": ..., "message": ...} with a nonzero exit status.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hspline/bounds.hpp"
#include "hspline/convergence.hpp"
#include "hspline/errors.hpp"
#include "hspline/interpolator.hpp"
#include "hspline/report.hpp"
#include "hspline/verification.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

struct KernelFlags {
  int n = 0;
  int lambda = 0;
  double c = 0.0;
  double b0 = hspline::kDefaultB0;
  double l_const = 1.0;
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& k, bool with_b0) {
  cmd->add_option("--n", k.n, "space dimension (even)")->required();
  cmd->add_option("--lambda", k.lambda, "kernel exponent lambda (even)")->required();
  cmd->add_option("--c", k.c, "shift parameter c > 0")->required();
  if (with_b0) {
    cmd->add_option("--b0", k.b0, "cube-side floor b0 > 0")->required();
    cmd->add_option("--l-const", k.l_const, "Fourier constant l (default 1)");
  }
}

hspline::KernelParams params_of(const KernelFlags& k) { return {k.n, k.lambda, k.c, k.l_const}; }

void print(const json& j) { std::cout << hspline::dump_json(j) << '\n'; }

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw hspline::InvalidArgument(what + ": cannot parse '" + text + "'");
  return value;
}

// A FLOAT, or the keyword delta0 / d0 for the admissible threshold itself, which can be
// far below the smallest double.
hspline::Spacing parse_spacing(const std::string& text, const hspline::BoundConstants& bc, const std::string& flag) {
  if (text == "delta0") return hspline::delta0_spacing(bc);
  if (text == "d0") return hspline::d0_spacing(bc);
  return hspline::Spacing::from_value(parse_double(text, flag));
}

std::string error_kind(const std::exception& e) {
  using namespace hspline;
  if (dynamic_cast<const HypothesisViolatedError*>(&e)) return "hypothesis_violated";
  if (dynamic_cast<const UnisolvencyError*>(&e)) return "unisolvency";
  if (dynamic_cast<const IllConditionedError*>(&e)) return "ill_conditioned";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const SetupError*>(&e)) return "setup";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid_argument";
  if (dynamic_cast<const Error*>(&e)) return "error";
  return "internal";
}

int run_constants(const KernelFlags& k) {
  print(hspline::constants_json(hspline::bound_constants(params_of(k), k.b0)));
  return 0;
}

int run_bound(const KernelFlags& k, const std::optional<std::string>& delta, const std::optional<std::string>& fill,
              double fnorm, bool force) {
  const auto bc = hspline::bound_constants(params_of(k), k.b0);
  const bool use_delta = delta.has_value();
  const auto spacing = use_delta ? parse_spacing(*delta, bc, "--delta") : parse_spacing(*fill, bc, "--fill");
  const auto ev =
      hspline::error_bound(bc, spacing, use_delta ? hspline::BoundForm::Delta : hspline::BoundForm::Fill, fnorm, force);
  print(hspline::bound_json(bc, ev));
  return 0;
}

int run_interpolate(const KernelFlags& k, const std::string& points_path, const std::string& values_path,
                    const std::string& eval_path, const std::string& out_path, bool force) {
  const auto params = hspline::KernelParams(k.n, k.lambda, k.c);
  const auto centers = hspline::read_points_csv(points_path);
  const auto values = hspline::read_values_csv(values_path);
  const auto eval = hspline::read_points_csv(eval_path);
  if (centers.dim() != k.n || eval.dim() != k.n)
    throw hspline::InvalidArgument("interpolate: csv dimension does not match --n");
  const auto model = hspline::fit(params, centers, values, {.force = force});
  const Eigen::VectorXd s = hspline::evaluate(model, eval);

  std::ofstream out(out_path);
  if (!out) throw hspline::InvalidArgument("cannot write '" + out_path + "'");
  for (int d = 1; d <= k.n; ++d) out << 'x' << d << ',';
  out << "s\n";
  char buf[32];
  for (std::size_t i = 0; i < eval.size(); ++i) {
    for (int d = 0; d < k.n; ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", eval.point(i)(d));
      out << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", s(static_cast<Eigen::Index>(i)));
    out << buf << '\n';
  }

  const auto& diag = model.diagnostics();
  print({{"points", centers.size()},
         {"evaluated", eval.size()},
         {"out", out_path},
         {"condition", diag.condition},
         {"max_node_residual", diag.max_node_residual},
         {"max_moment_residual", diag.max_moment_residual},
         {"condition_warning", diag.condition_warning},
         {"forced", diag.forced}});
  return 0;
}

struct ConvergenceFlags {
  std::string config;
  std::optional<std::string> out;
  std::optional<int> n, lambda, levels, eval_resolution, fill_resolution;
  std::optional<double> c, b0, l_const, coarsest_spacing;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> target;
  std::optional<bool> force_hypothesis, force_ill_conditioned;
};

int run_convergence_cmd(const ConvergenceFlags& f) {
  std::ifstream in(f.config);
  if (!in) throw hspline::InvalidArgument("cannot open config '" + f.config + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw hspline::InvalidArgument("config '" + f.config + "': " + e.what());
  }
  if (!j.is_object()) throw hspline::InvalidArgument("config must be a JSON object");

  auto set = [&j](const char* key, const auto& flag) {
    if (flag) j[key] = *flag;
  };
  set("n", f.n);
  set("lambda", f.lambda);
  set("c", f.c);
  set("b0", f.b0);
  set("l-const", f.l_const);
  set("levels", f.levels);
  set("coarsest-spacing", f.coarsest_spacing);
  set("eval-resolution", f.eval_resolution);
  set("fill-resolution", f.fill_resolution);
  set("seed", f.seed);
  set("force-hypothesis", f.force_hypothesis);
  set("force-ill-conditioned", f.force_ill_conditioned);
  if (f.target) {
    if (j.contains("target") && j["target"].is_object())
      j["target"]["kind"] = *f.target;
    else
      j["target"] = *f.target;
  }
  std::optional<std::string> out = f.out;
  if (!out && j.contains("out")) out = j["out"].get<std::string>();

  const auto config = hspline::convergence_config_from_json(j);
  const auto report = hspline::run_convergence(config);
  const std::string document = hspline::dump_json(hspline::convergence_json(report));

  fs::path csv_path = "levels.csv";
  if (out) {
    std::ofstream o(*out);
    if (!o) throw hspline::InvalidArgument("cannot write '" + *out + "'");
    o << document << '\n';
    csv_path = fs::path(*out).parent_path() / "levels.csv";
  } else {
    std::cout << document << '\n';
  }
  std::ofstream csv(csv_path);
  if (!csv) throw hspline::InvalidArgument("cannot write '" + csv_path.string() + "'");
  csv << hspline::levels_csv(report);
  if (out) print({{"out", *out}, {"levels_csv", csv_path.string()}, {"levels", report.levels.size()}});
  return 0;
}

int run_verify(const std::string& suite, const std::string& grid) {
  if (grid != "default") throw hspline::InvalidArgument("verify: only --grid default is available");
  json j;
  bool pass = true;
  if (suite == "moments" || suite == "all") {
    const auto r = hspline::verify_moments();
    j["moments"] = hspline::moments_json(r);
    pass = pass && r.pass;
  }
  if (suite == "polybound" || suite == "all") {
    const auto r = hspline::verify_polybound();
    j["polybound"] = hspline::polybound_json(r);
    pass = pass && r.pass;
  }
  if (suite == "lemma23" || suite == "all") {
    const auto r = hspline::verify_lemma23_suite();
    j["lemma23"] = hspline::lemma23_json(r);
    pass = pass && r.pass;
  }
  j["suite"] = suite;
  j["grid"] = grid;
  j["pass"] = pass;
  print(j);
  return pass ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"h-spline interpolation, error-bound constants and verification"};
  app.require_subcommand(1);

  KernelFlags constants_k;
  auto* constants = app.add_subcommand("constants", "bound constants as JSON");
  add_kernel_flags(constants, constants_k, true);

  KernelFlags bound_k;
  std::optional<std::string> delta, fill;
  double fnorm = 0.0;
  bool force_hypothesis = false;
  auto* bound = app.add_subcommand("bound", "certified error bound as JSON");
  add_kernel_flags(bound, bound_k, true);
  auto* delta_opt = bound->add_option("--delta", delta, "subcube side delta (FLOAT or 'delta0')");
  auto* fill_opt = bound->add_option("--fill", fill, "fill distance d (FLOAT or 'd0')");
  delta_opt->excludes(fill_opt);
  fill_opt->excludes(delta_opt);
  bound->add_option("--fnorm", fnorm, "native-space norm of f")->required();
  bound->add_flag("--force-hypothesis", force_hypothesis, "evaluate even if the spacing exceeds the threshold");

  KernelFlags interp_k;
  std::string points_path, values_path, eval_path, out_path;
  bool interp_force = false;
  auto* interpolate = app.add_subcommand("interpolate", "fit on a point set and evaluate");
  interpolate->add_option("--points", points_path, "centers CSV (x1,...,xn)")->required()->check(CLI::ExistingFile);
  interpolate->add_option("--values", values_path, "values CSV (value)")->required()->check(CLI::ExistingFile);
  add_kernel_flags(interpolate, interp_k, false);
  interpolate->add_option("--eval", eval_path, "evaluation points CSV")->required()->check(CLI::ExistingFile);
  interpolate->add_option("--out", out_path, "output CSV (x1,...,xn,s)")->required();
  interpolate->add_flag("--force-ill-conditioned", interp_force, "accept condition estimates above 1e15");

  ConvergenceFlags cf;
  auto* convergence = app.add_subcommand("convergence", "multi-level convergence experiment");
  convergence->add_option("--config", cf.config, "configuration JSON")->required()->check(CLI::ExistingFile);
  convergence->add_option("--out", cf.out, "report JSON path (levels.csv goes next to it)");
  convergence->add_option("--n", cf.n);
  convergence->add_option("--lambda", cf.lambda);
  convergence->add_option("--c", cf.c);
  convergence->add_option("--b0", cf.b0);
  convergence->add_option("--l-const", cf.l_const);
  convergence->add_option("--levels", cf.levels);
  convergence->add_option("--coarsest-spacing", cf.coarsest_spacing);
  convergence->add_option("--eval-resolution", cf.eval_resolution);
  convergence->add_option("--fill-resolution", cf.fill_resolution);
  convergence->add_option("--seed", cf.seed);
  convergence->add_option("--target", cf.target, "native, gaussian or polynomial");
  convergence->add_option("--force-hypothesis", cf.force_hypothesis, "true/false");
  convergence->add_option("--force-ill-conditioned", cf.force_ill_conditioned, "true/false");

  std::string suite, grid = "default";
  auto* verify = app.add_subcommand("verify", "verification suites; exit status 0 iff pass");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember({"moments", "polybound", "lemma23", "all"}));
  verify->add_option("--grid", grid)->check(CLI::IsMember({"default"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*constants) return run_constants(constants_k);
    if (*bound) {
      if (!delta && !fill) throw hspline::InvalidArgument("bound: one of --delta or --fill is required");
      return run_bound(bound_k, delta, fill, fnorm, force_hypothesis);
    }
    if (*interpolate) return run_interpolate(interp_k, points_path, values_path, eval_path, out_path, interp_force);
    if (*convergence) return run_convergence_cmd(cf);
    if (*verify) return run_verify(suite, grid);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", error_kind(e)}, {"message", e.what()}}.dump() << '\n';
    return kExitFailure;
  }
  return kExitError;
}
