#include <doctest.h>

#include <sstream>

#include "et6/config.hpp"

using namespace et6;

namespace {
RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test");
}

std::string error_of(const std::string& text) {
  try {
    RunConfig c = parse(text);
    c.validate();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_SUITE("config") {

TEST_CASE("empty input gives the defaults") {
  RunConfig c = parse("");
  c.validate();
  CHECK(c.gas.D() == 5.0);
  CHECK(c.scenario.cfl == 0.45);
  CHECK(c.check.oracle_tol == 1e-8);
  CHECK(c.check.seed == 20240611u);
  CHECK(c.output.dir == ".");
  CHECK(c.explicit_keys.empty());
}

TEST_CASE("sections, comments and explicit keys") {
  RunConfig c = parse(
      "; comment\n[gas]\nD = 7\ntau = 0.01 ; trailing\n# other\n[scenario]\nkind = riemann\n"
      "boundary = outflow\nN = 64\n[check]\nd_values = 4, 5\n[output]\nprecision = 9\n");
  c.validate();
  CHECK(c.gas.D() == 7.0);
  CHECK(c.gas.tau() == 0.01);
  CHECK(c.scenario.kind == ScenarioKind::kRiemann);
  CHECK(c.scenario.boundary == Boundary::kOutflow);
  CHECK(c.scenario.N == 64);
  CHECK(c.check.d_values == std::vector<double>{4.0, 5.0});
  CHECK(c.output.precision == 9);
  CHECK(c.is_set("gas.D"));
  CHECK_FALSE(c.is_set("gas.m"));
  const Scenario sc = c.resolved_scenario();
  CHECK(sc.gas.D() == 7.0);
  CHECK(sc.gas.tau() == 0.01);
}

TEST_CASE("D = 3 and CFL = 1.5 are rejected with the key named") {
  const std::string d = error_of("[gas]\nD = 3\n");
  CHECK(d.find("gas.D") != std::string::npos);
  CHECK(d.find("D > 3") != std::string::npos);
  const std::string cfl = error_of("[scenario]\nCFL = 1.5\n");
  CHECK(cfl.find("scenario.cfl") != std::string::npos);
}

TEST_CASE("unknown keys and type mismatches") {
  CHECK(error_of("[gas]\nDOF = 5\n").find("gas.DOF: unknown key") != std::string::npos);
  CHECK(error_of("[scenario]\nN = many\n").find("scenario.N: expected an integer") != std::string::npos);
  CHECK(error_of("[gas]\ntau = fast\n").find("gas.tau: expected a number") != std::string::npos);
  CHECK(error_of("[scenario]\nboundary = sticky\n").find("scenario.boundary") != std::string::npos);
  CHECK(error_of("D = 5\n").find("outside of a [section]") != std::string::npos);
  CHECK(error_of("[output]\nprecision = 30\n").find("output.precision") != std::string::npos);
  CHECK(error_of("[gas]\ntau = -1\n").find("gas.tau") != std::string::npos);
}

TEST_CASE("set() applies command-line style overrides") {
  RunConfig c;
  c.set("scenario.t_end", "0.5");
  c.set("GAS.d", "4.5");
  CHECK(c.scenario.t_end == 0.5);
  CHECK(c.gas.D() == 4.5);
  CHECK(c.is_set("scenario.t_end"));
  CHECK_THROWS_AS(c.set("scenario.nope", "1"), ConfigError);
}

TEST_CASE("quick mode shrinks the sweeps") {
  RunConfig c;
  c.apply_quick();
  CHECK(c.check.grid_points < 21);
  CHECK(c.check.random_states < 50);
  c.validate();
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_config("/nonexistent/et6.cfg"), ConfigError);
}

TEST_CASE("every known key is accepted by set()") {
  for (const std::string& key : known_config_keys()) CHECK(key.find('.') != std::string::npos);
  CHECK(known_config_keys().size() > 40);
}

}  // TEST_SUITE
