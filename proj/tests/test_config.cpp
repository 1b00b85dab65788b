#include <doctest.h>

#include <string>

#include "ccfrag/errors.hpp"
#include "ccfrag/grid.hpp"
#include "ccfrag/run_config.hpp"

using namespace ccfrag;

namespace {

std::string minimal_config() {
  return R"({
  "grid": {"x_min": 0.001, "x_max": 1000.0, "n_cells": 60},
  "kernels": {
    "K": {"family": "granulation", "k": 1.0, "a": 1.0, "b": 0.5,
          "bound": {"k1": 1.0, "mu": 1.0, "sigma": 0.5}},
    "C": {"family": "constant", "k2": 0.1},
    "B": {"family": "power_law", "nu": 0.0}
  },
  "truncation_n": 1000,
  "time": {"t_end": 1.0},
  "initial": {"type": "exponential", "amplitude": 1.0, "scale": 1.0}
})";
}

}  // namespace

TEST_CASE("parse and defaults") {
  const RunConfig c = parse_run_config(minimal_config());
  CHECK(c.x_min == 0.001);
  CHECK(c.n_cells == 60);
  CHECK(c.K.family == CoagFamily::kGranulation);
  CHECK(c.K.sigma == 0.5);
  CHECK(c.C.k2 == 0.1);
  CHECK(c.B.nu == 0.0);
  CHECK(c.B.B_tilde == 2.0);  // nu + 2 when unspecified
  CHECK(c.truncation_n == 1000);
  CHECK(c.dt_safety == 1e-6);
  CHECK(c.sample_count == 11);
  CHECK(c.positivity == "clip_and_report");
  CHECK(c.omega == 0.5);
  CHECK(c.theta == 0.5);
}

TEST_CASE("serialization round-trips byte-identically") {
  const RunConfig c = parse_run_config(minimal_config());
  const std::string text = serialize_run_config(c);
  const RunConfig again = parse_run_config(text);
  CHECK(serialize_run_config(again) == text);
  CHECK(config_hash(c) == config_hash(again));
}

TEST_CASE("hash tracks content") {
  RunConfig a = parse_run_config(minimal_config());
  RunConfig b = a;
  CHECK(config_hash(a) == config_hash(b));
  b.t_end = 2.0;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("missing fields are named") {
  auto expect_mentions = [](const std::string& text, const std::string& what) {
    try {
      parse_run_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(what) != std::string::npos);
    }
  };
  expect_mentions(R"({})", "grid");
  expect_mentions(R"({"grid": {"x_max": 1.0, "n_cells": 3}})", "grid.x_min");
  expect_mentions(
      R"({"grid": {"x_min": 0.1, "x_max": 1.0, "n_cells": 3},
          "kernels": {"K": {"family": "constant"},
                      "C": {"family": "zero"}}})",
      "kernels.B");
  expect_mentions("{ not json", "parse");
}

TEST_CASE("validation") {
  std::string bad_nu = minimal_config();
  bad_nu.replace(bad_nu.find("\"nu\": 0.0"), 9, "\"nu\": 0.5");
  CHECK_THROWS_AS(parse_run_config(bad_nu), ConfigError);

  std::string bad_gran = minimal_config();
  bad_gran.replace(bad_gran.find("\"b\": 0.5"), 8, "\"b\": 1.5");
  CHECK_THROWS_AS(parse_run_config(bad_gran), ConfigError);

  std::string bad_pos = minimal_config();
  bad_pos.replace(bad_pos.find("\"t_end\": 1.0"), 12,
                  "\"t_end\": 1.0, \"positivity\": \"maybe\"");
  CHECK_THROWS_AS(parse_run_config(bad_pos), ConfigError);

  std::string bad_trunc = minimal_config();
  bad_trunc.replace(bad_trunc.find("\"truncation_n\": 1000"), 20,
                    "\"truncation_n\": 0");
  CHECK_THROWS_AS(parse_run_config(bad_trunc), ConfigError);
}

TEST_CASE("initial condition projection") {
  const MassGrid g = build_geometric_grid(0.1, 10.0, 20);

  InitialCondition zero;
  zero.type = "zero";
  for (double v : zero.project(g)) CHECK(v == 0.0);

  InitialCondition flat;
  flat.type = "constant";
  flat.amplitude = 2.0;
  for (double v : flat.project(g)) CHECK(v == doctest::Approx(2.0));

  InitialCondition mono;
  mono.type = "monodisperse";
  mono.amplitude = 3.0;
  mono.center = 1.0;
  const auto d = mono.project(g);
  const std::size_t cell = g.locate(1.0);
  double number = 0.0;
  for (std::size_t i = 0; i < g.n_cells; ++i) {
    number += d[i] * g.widths[i];
    if (i != cell) CHECK(d[i] == 0.0);
  }
  CHECK(number == doctest::Approx(3.0));

  InitialCondition odd;
  odd.type = "triangular";
  CHECK_THROWS_AS(odd.project(g), ConfigError);
}

TEST_CASE("solver config assembly") {
  const RunConfig c = parse_run_config(minimal_config());
  const SolverConfig s = make_solver_config(c, 4);
  CHECK(s.grid.n_cells == 60);
  CHECK(s.kernels.n == 1000);
  CHECK(s.t_end == 1.0);
  CHECK(s.dt_tol == 1e-6);
  CHECK(s.n_threads == 4);
  CHECK(s.positivity == PositivityMode::kClipAndReport);
}
