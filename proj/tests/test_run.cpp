#include <doctest.h>

#include <cstdlib>
#include <string>

#include "qae/run.hpp"

using namespace qae;

TEST_CASE("config text parsing") {
  RunConfig cfg = parse_config_text(
      "# comment line\n"
      "dim = 4\n"
      "budget = 10, 5000\n"
      "eps_reg = 1/2^8\n"
      "seed=42\n"
      "suites = entropy, kq-scenario\n"
      "out = report.json\n"
      "cap_bound_c = 1.0\n");
  CHECK(cfg.dim == 4);
  CHECK(cfg.budget.max_len == 10);
  CHECK(cfg.budget.max_steps == 5000);
  CHECK(cfg.eps_reg == Dyadic::pow2(-8));
  CHECK(cfg.seed == 42);
  REQUIRE(cfg.suites.size() == 2);
  CHECK(cfg.suites[0] == "entropy");
  CHECK(cfg.suites[1] == "kq-scenario");
  CHECK(cfg.output_path == "report.json");
  cfg.validate();

  CHECK_THROWS_AS(parse_config_text("bogus_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("dim = four\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("budget = 12\n"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("dim = 2\nno equals sign\n"),
                       doctest::Contains("line 2"), ConfigError);
}

TEST_CASE("config validation separates config and cap errors") {
  RunConfig cfg;
  cfg.validate();

  RunConfig over = cfg;
  over.budget.max_len = kDefaultHardLenCap + 1;
  CHECK_THROWS_AS(over.validate(), CapError);

  RunConfig eps = cfg;
  eps.eps_reg = Dyadic{1};
  CHECK_THROWS_AS(eps.validate(), ConfigError);

  RunConfig suite = cfg;
  suite.suites = {"entropy", "nonsense"};
  CHECK_THROWS_AS(suite.validate(), ConfigError);

  RunConfig zero = cfg;
  zero.budget.max_steps = 0;
  CHECK_THROWS_AS(zero.validate(), ConfigError);
}

TEST_CASE("config serialization round trip") {
  RunConfig cfg;
  cfg.dim = 4;
  cfg.budget = Budget{14, 2000};
  cfg.eps_reg = Dyadic::pow2(-9);
  cfg.seed = 7;
  cfg.suites = {"entropy", "caps"};
  cfg.output_path = "x.json";

  RunConfig back = parse_config_text(serialize_config(cfg));
  CHECK(back.dim == cfg.dim);
  CHECK(back.budget.max_len == cfg.budget.max_len);
  CHECK(back.budget.max_steps == cfg.budget.max_steps);
  CHECK(back.eps_reg == cfg.eps_reg);
  CHECK(back.seed == cfg.seed);
  CHECK(back.suites == cfg.suites);
  CHECK(back.output_path == cfg.output_path);
}

TEST_CASE("environment overrides") {
  RunConfig cfg;
  setenv("QAE_DIM", "8", 1);
  setenv("QAE_SEED", "99", 1);
  apply_env_overrides(cfg);
  unsetenv("QAE_DIM");
  unsetenv("QAE_SEED");
  CHECK(cfg.dim == 8);
  CHECK(cfg.seed == 99);

  setenv("QAE_DIM", "not-a-number", 1);
  RunConfig bad;
  CHECK_THROWS_AS(apply_env_overrides(bad), ConfigError);
  unsetenv("QAE_DIM");
}

TEST_CASE("missing config file is an I/O error") {
  CHECK_THROWS_AS(load_config("definitely_missing_config.cfg"), IoError);
}

TEST_CASE("snapshot digest is content-addressed") {
  EnumerationSnapshot a = enumerate_programs(2, Budget{10, 1000});
  EnumerationSnapshot b = enumerate_programs(2, Budget{12, 1000});
  std::string da = snapshot_digest(a);
  CHECK(da.size() == 16);
  CHECK(da == snapshot_digest(a));
  CHECK(da != snapshot_digest(b));
}

TEST_CASE("run produces a deterministic passing report") {
  RunConfig cfg;
  cfg.dim = 2;
  cfg.budget = Budget{12, 1000};
  cfg.seed = 1;
  cfg.suites = {"entropy", "tests", "kq-scenario"};

  RunResult r1 = run(cfg);
  CHECK(r1.all_ok);
  CHECK(r1.report["format"] == "qae-report v1");
  CHECK(r1.report["config"]["dim"] == 2);
  CHECK(r1.report["kraft_mass"] == "199/2^10");
  CHECK(r1.report["suites"]["entropy"]["pass"] == true);
  CHECK(r1.report["suites"]["tests"]["pass"] == true);
  CHECK(r1.report["suites"]["kq-scenario"]["pass"] == true);
  CHECK(r1.report["all_ok"] == true);

  RunResult r2 = run(cfg);
  r1.report.erase("timing_ms");
  r2.report.erase("timing_ms");
  CHECK(r1.report.dump() == r2.report.dump());
}

TEST_CASE("run rejects an over-cap budget with a cap error") {
  RunConfig cfg;
  cfg.budget.max_len = kDefaultHardLenCap + 2;
  CHECK_THROWS_AS(run(cfg), CapError);
}
