#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "hspline/errors.hpp"
#include "hspline/report.hpp"

using namespace hspline;
using nlohmann::json;

TEST(DumpJson, SeventeenDigitsAndNonFinite) {
  const json j = {{"third", 1.0 / 3.0},
                  {"whole", 2.0},
                  {"count", 3},
                  {"inf", std::numeric_limits<double>::infinity()},
                  {"ninf", -std::numeric_limits<double>::infinity()},
                  {"nan", std::nan("")}};
  const std::string s = dump_json(j, -1);
  EXPECT_NE(s.find("0.33333333333333331"), std::string::npos) << s;
  EXPECT_NE(s.find("\"whole\":2.0"), std::string::npos) << s;
  EXPECT_NE(s.find("\"count\":3"), std::string::npos) << s;
  EXPECT_NE(s.find("\"inf\":\"inf\""), std::string::npos) << s;
  EXPECT_NE(s.find("\"ninf\":\"-inf\""), std::string::npos) << s;
  EXPECT_NE(s.find("\"nan\":\"nan\""), std::string::npos) << s;
  const json back = json::parse(s);
  EXPECT_EQ(back["third"].get<double>(), 1.0 / 3.0);
}

TEST(ConstantsJson, ReferenceFields) {
  const json j = constants_json(bound_constants(KernelParams(2, 2, 1.0)));
  EXPECT_EQ(j["gamma_n"], 12);
  EXPECT_EQ(j["moment_case"]["case"], "b");
  EXPECT_EQ(j["moment_case"]["s"], 1);
  EXPECT_EQ(j["moment_case"]["delta0_cap_exact"], "1/6");
  EXPECT_NEAR(j["ln_B"].get<double>(), 49.039720770839917964, 1e-12);
  EXPECT_EQ(j["b0"].get<double>(), 1.0);
  EXPECT_EQ(j["params"]["l_const"].get<double>(), 1.0);
  EXPECT_EQ(j["approx"]["delta0"], "4.67e-24");
}

TEST(ConvergenceConfigJson, RoundTripAndOverrides) {
  const json in = {{"n", 2},
                   {"lambda", 4},
                   {"c", 0.5},
                   {"levels", 3},
                   {"coarsest-spacing", 0.5},
                   {"seed", 9},
                   {"target", {{"kind", "gaussian"}, {"width", 0.3}}}};
  const auto cfg = convergence_config_from_json(in);
  EXPECT_EQ(cfg.params.lambda(), 4);
  EXPECT_EQ(cfg.params.c(), 0.5);
  EXPECT_EQ(cfg.levels, 3);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.target.kind, TargetKind::Gaussian);
  EXPECT_EQ(cfg.target.gaussian_width, 0.3);
  const auto again = convergence_config_from_json(convergence_config_json(cfg));
  EXPECT_EQ(again.params, cfg.params);
  EXPECT_EQ(again.coarsest_spacing, cfg.coarsest_spacing);
  EXPECT_EQ(again.target.gaussian_width, cfg.target.gaussian_width);

  EXPECT_EQ(convergence_config_from_json(json{{"target", "polynomial"}}).target.kind, TargetKind::Polynomial);
  EXPECT_THROW(convergence_config_from_json(json{{"bogus", 1}}), InvalidArgument);
  EXPECT_THROW(convergence_config_from_json(json{{"n", "two"}}), InvalidArgument);
  EXPECT_THROW(convergence_config_from_json(json::array()), InvalidArgument);
}

TEST(LevelsCsv, HeaderAndRows) {
  ConvergenceConfig cfg;
  cfg.levels = 3;
  cfg.coarsest_spacing = 0.5;
  cfg.eval_resolution = 21;
  cfg.target.kind = TargetKind::Gaussian;
  const auto report = run_convergence(cfg);
  std::istringstream csv(levels_csv(report));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "delta,N,fill_upper,max_error,condition");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 3);
  const json j = convergence_json(report);
  EXPECT_EQ(j["levels"].size(), 3u);
  EXPECT_TRUE(j.contains("fitted"));
}

TEST(SuiteJson, Lemma23) {
  const json j = lemma23_json(verify_lemma23_suite(5));
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["cases"][4]["two_k_factorial"], "3628800");
  EXPECT_EQ(j["cases"][4]["four_k_k_factorial_squared"], "14745600");
}
