#include <doctest.h>

#include <cmath>
#include <random>

#include "ccfrag/errors.hpp"
#include "ccfrag/grid.hpp"
#include "ccfrag/moments.hpp"

using namespace ccfrag;

TEST_CASE("geometric grid construction") {
  const MassGrid g = build_geometric_grid(1.0, 8.0, 3);
  CHECK(g.ratio == doctest::Approx(2.0));
  REQUIRE(g.edges.size() == 4);
  CHECK(g.edges[0] == doctest::Approx(1.0));
  CHECK(g.edges[1] == doctest::Approx(2.0));
  CHECK(g.edges[2] == doctest::Approx(4.0));
  CHECK(g.edges[3] == doctest::Approx(8.0));
  CHECK(g.pivots[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(g.pivots[1] == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(g.pivots[2] == doctest::Approx(4.0 * std::sqrt(2.0)));
  for (std::size_t i = 0; i < g.n_cells; ++i) {
    CHECK(g.pivots[i] > g.edges[i]);
    CHECK(g.pivots[i] < g.edges[i + 1]);
    CHECK(g.widths[i] == doctest::Approx(g.edges[i + 1] - g.edges[i]));
  }

  const MassGrid wide = build_geometric_grid(1.0, 1e6, 60);
  CHECK(wide.ratio == doctest::Approx(std::pow(10.0, 0.1)));
}

TEST_CASE("grid construction errors") {
  CHECK_THROWS_AS(build_geometric_grid(0.0, 1.0, 10), ConfigError);
  CHECK_THROWS_AS(build_geometric_grid(-1.0, 1.0, 10), ConfigError);
  CHECK_THROWS_AS(build_geometric_grid(2.0, 1.0, 10), ConfigError);
  CHECK_THROWS_AS(build_geometric_grid(1.0, 8.0, 0), ConfigError);
}

TEST_CASE("locate") {
  const MassGrid g = build_geometric_grid(1.0, 8.0, 3);
  CHECK(g.locate(1.0) == 0);
  CHECK(g.locate(1.9) == 0);
  CHECK(g.locate(2.0) == 1);
  CHECK(g.locate(7.9) == 2);
  CHECK(g.locate(8.0) == 2);
  CHECK_THROWS_AS(g.locate(0.5), ConfigError);
}

TEST_CASE("projection of simple functions") {
  const MassGrid g = build_geometric_grid(1.0, 8.0, 3);
  const auto zero = project_initial_condition(g, [](double) { return 0.0; });
  for (double v : zero) CHECK(v == 0.0);

  const auto one = project_initial_condition(g, [](double) { return 1.0; });
  for (double v : one) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  const auto expn =
      project_initial_condition(g, [](double x) { return std::exp(-x); });
  // exact cell average over [1, 2]
  CHECK(expn[0] ==
        doctest::Approx(std::exp(-1.0) - std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("projection rejects bad initial data") {
  const MassGrid g = build_geometric_grid(1.0, 8.0, 3);
  CHECK_THROWS_AS(project_initial_condition(g, [](double) { return -1.0; }),
                  InputError);
  CHECK_THROWS_AS(
      project_initial_condition(
          g, [](double) { return std::numeric_limits<double>::quiet_NaN(); }),
      InputError);
}

TEST_CASE("projection of nonnegative functions stays nonnegative") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coeff(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = coeff(rng), b = coeff(rng), c = coeff(rng);
    const MassGrid g = build_geometric_grid(0.1, 50.0, 25);
    const auto d = project_initial_condition(g, [&](double x) {
      return a * std::exp(-b * x) + c / (1.0 + x * x);
    });
    for (double v : d) CHECK(v >= 0.0);
  }
}

TEST_CASE("first moment of projection converges at second order") {
  // exact: integral of x e^{-x} over [0.5, 8]
  auto anti = [](double x) { return -(x + 1.0) * std::exp(-x); };
  const double exact = anti(8.0) - anti(0.5);
  auto m1_error = [&](std::size_t cells) {
    const MassGrid g = build_geometric_grid(0.5, 8.0, cells);
    const auto d =
        project_initial_condition(g, [](double x) { return std::exp(-x); });
    return std::abs(moment(d, g, 1.0) - exact);
  };
  const double e1 = m1_error(20);
  const double e2 = m1_error(40);
  const double e3 = m1_error(80);
  CHECK(e1 / e2 > 3.0);
  CHECK(e1 / e2 < 5.0);
  CHECK(e2 / e3 > 3.0);
  CHECK(e2 / e3 < 5.0);
}
