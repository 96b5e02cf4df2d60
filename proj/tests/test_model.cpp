#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "twobody/model.hpp"

using namespace twobody;

TEST_CASE("strength parsing") {
  CHECK(Strength::parse("inf").is_hardcore());
  CHECK(Strength::parse("INF").is_hardcore());
  CHECK(Strength::parse("+Inf").is_hardcore());
  CHECK(Strength::parse(" 2.5 ").value() == 2.5);
  CHECK(Strength::parse("-4").value() == -4.0);
  CHECK_THROWS_AS(Strength::parse("abc"), InvalidArgument);
  CHECK_THROWS_AS(Strength::parse("nan"), InvalidArgument);
  CHECK_THROWS_AS(Strength::hardcore().value(), InvalidArgument);
  CHECK_THROWS_AS(Strength::finite(1.0 / 0.0), InvalidArgument);
  CHECK(Strength::hardcore().to_string() == "inf");
  CHECK(Strength::finite(-2.0).to_string() == "-2");
  CHECK(Strength::parse(Strength::finite(0.1).to_string()) == Strength::finite(0.1));
}

TEST_CASE("non-interacting reduction") {
  CHECK(SystemParams{Strength::finite(0.0), 1.0}.non_interacting());
  CHECK(SystemParams{Strength::finite(3.0), 0.0}.non_interacting());
  CHECK(SystemParams{Strength::hardcore(), 0.0}.non_interacting());
  CHECK_FALSE(SystemParams{Strength::hardcore(), 1.0}.non_interacting());
  CHECK_FALSE(SystemParams{Strength::finite(-1.0), 1.0}.non_interacting());
}

TEST_CASE("validate examples") {
  SUBCASE("defaults are ok") {
    const SystemParams p{Strength::finite(0.0), 1.0};
    CHECK(validate(p, NumericsConfig::defaults(1.0)).ok());
    CHECK(validate(p, NumericsConfig{}).ok());
  }
  SUBCASE("negative sigma") {
    const SystemParams p{Strength::finite(2.0), -0.5};
    const auto r = validate(p, NumericsConfig::defaults(0.0));
    CHECK_FALSE(r.ok());
    CHECK(r.violates("sigma >= 0"));
    CHECK(r.violations.front().field == "sigma");
  }
  SUBCASE("box smaller than domain") {
    NumericsConfig cfg = NumericsConfig::defaults(1.0);
    cfg.box_L = 5.0;
    cfg.r_max = 8.0;
    const auto r = validate({Strength::hardcore(), 1.0}, cfg);
    CHECK(r.violates("box_L >= r_max"));
    CHECK(r.violations.size() == 1);
  }
  SUBCASE("every numeric rule") {
    NumericsConfig cfg;
    cfg.n_radial = 8;
    cfg.n_angular = 33;
    cfg.l_max = 0;
    cfg.m_sine = 2;
    cfg.energy_tol = 0.0;
    cfg.bracket_step = -1.0;
    cfg.workers = 0;
    const auto r = validate({Strength::finite(0.0), 1.0}, cfg);
    for (const char* rule : {"n_radial >= 16", "n_angular even", "l_max >= 1", "m_sine >= 4",
                             "energy_tol > 0", "bracket_step > 0", "workers >= 1"})
      CHECK_MESSAGE(r.violates(rule), rule);
    cfg.n_angular = 30;
    CHECK(validate({Strength::finite(0.0), 1.0}, cfg).violates("n_angular >= 32"));
  }
  SUBCASE("purity of validate") {
    NumericsConfig cfg;
    cfg.box_L = 1.0;
    const SystemParams p{Strength::finite(1.0), -1.0};
    const NumericsConfig copy = cfg;
    CHECK(validate(p, cfg) == validate(p, cfg));
    CHECK(cfg == copy);
  }
}

TEST_CASE("defaults track sigma") {
  CHECK(NumericsConfig::defaults(1.0).r_max == 8.0);
  CHECK(NumericsConfig::defaults(3.0).r_max == 9.0);
  CHECK(NumericsConfig::defaults(3.0).box_L == 9.0);
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# comment\n"
      "kappa = inf\n"
      "sigma=1.5   # trailing comment\n"
      "\n"
      "n_radial=120\n"
      "r_max=10\n"
      "kappa_values=0,1,2\n");
  const ConfigFile f = parse_config(in);
  REQUIRE(f.kappa.has_value());
  CHECK(f.kappa->is_hardcore());
  CHECK(*f.sigma == 1.5);
  CHECK(f.numerics.at("n_radial") == "120");
  CHECK(f.extra.at("kappa_values") == "0,1,2");

  const NumericsConfig cfg = resolve_numerics(f.numerics, *f.sigma);
  CHECK(cfg.n_radial == 120);
  CHECK(cfg.r_max == 10.0);
  CHECK(cfg.box_L == 10.0);  // follows r_max

  std::istringstream bad("n_radial\n");
  CHECK_THROWS_AS(parse_config(bad), InvalidArgument);
  CHECK_THROWS_AS(resolve_numerics({{"n_radial", "12.5"}}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(resolve_numerics({{"r_max", "x"}}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), InvalidArgument);
}

TEST_CASE("config text round trip") {
  NumericsConfig cfg = NumericsConfig::defaults(2.0);
  cfg.energy_tol = 3e-11;
  cfg.bracket_step = 0.1;
  const SystemParams p{Strength::finite(0.3), 2.0};
  std::istringstream in(to_config_text(p, cfg));
  const ConfigFile f = parse_config(in);
  CHECK(*f.kappa == p.kappa);
  CHECK(*f.sigma == p.sigma);
  CHECK(resolve_numerics(f.numerics, *f.sigma) == cfg);
}

TEST_CASE("real formatting") {
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(-2.5e-14) == "-2.5e-14");
}
