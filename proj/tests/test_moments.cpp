#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ccfrag/errors.hpp"
#include "ccfrag/grid.hpp"
#include "ccfrag/moments.hpp"

using namespace ccfrag;

TEST_CASE("discrete moments") {
  const MassGrid g = build_geometric_grid(1.0, 8.0, 3);
  const std::vector<double> uniform(3, 1.0);
  // sum p_i w_i with p_i = sqrt(2) 2^i, w_i = 2^i: sqrt(2)(1+4+16)
  CHECK(moment(uniform, g, 1.0) == doctest::Approx(21.0 * std::sqrt(2.0)));
  CHECK(moment(uniform, g, 0.0) == doctest::Approx(7.0));
  CHECK(moment(std::vector<double>(3, 0.0), g, 2.0) == 0.0);

  // wide fine grid recovers the exponential mass integral
  const MassGrid fine = build_geometric_grid(1e-4, 1e3, 600);
  const auto d =
      project_initial_condition(fine, [](double x) { return std::exp(-x); });
  CHECK(moment(d, fine, 1.0) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("moments are linear in the density") {
  const MassGrid g = build_geometric_grid(0.5, 32.0, 12);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> amp(0.0, 3.0);
  std::vector<double> a(12), b(12), sum(12);
  for (std::size_t i = 0; i < 12; ++i) {
    a[i] = amp(rng);
    b[i] = amp(rng);
    sum[i] = a[i] + 2.0 * b[i];
  }
  for (double xi : {-0.5, 0.0, 1.0, 2.5}) {
    CHECK(moment(sum, g, xi) ==
          doctest::Approx(moment(a, g, xi) + 2.0 * moment(b, g, xi))
              .epsilon(1e-13));
  }
}

TEST_CASE("subadditivity constant") {
  EnvelopeParams p;
  p.mu = 0.5;
  CHECK(p.k_mu() == doctest::Approx(1.0));
  p.mu = 1.0;
  CHECK(p.k_mu() == doctest::Approx(1.0));
  p.mu = 2.0;
  CHECK(p.k_mu() == doctest::Approx(2.0));
}

TEST_CASE("number envelope") {
  EnvelopeParams p;
  p.T = 1.0;
  p.k2 = 0.0;
  p.N = 2.0;
  CHECK(envelope_P0(p, 3.0, 1.0) == doctest::Approx(3.0));
  p.k2 = 1.0;
  p.N = 1.0;  // binary-neutral fragmentation adds no particles
  CHECK(envelope_P0(p, 3.0, 1.0) == doctest::Approx(3.0));
  p.N = 2.0;
  CHECK(envelope_P0(p, 1.0, 1.0) == doctest::Approx(5.0 * std::exp(8.0)));
}

TEST_CASE("second-moment envelope") {
  EnvelopeParams p;
  p.T = 0.0;
  p.k1 = 1.0;
  CHECK(envelope_P2(p, 7.0, 1.0, 1.0) == doctest::Approx(7.0));
  p.T = 1.0;
  p.k1 = 0.0;
  CHECK(envelope_P2(p, 7.0, 1.0, 1.0) == doctest::Approx(7.0));
  p.k1 = 1.0;
  p.mu = 0.0;
  CHECK(envelope_P2(p, 1.0, 1.0, 1.0) ==
        doctest::Approx(std::exp(4.0) + 0.5 * (std::exp(4.0) - 1.0)));
  CHECK(envelope_P2(p, 1.0, 0.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("higher-moment envelope") {
  EnvelopeParams p;
  p.T = 0.0;
  p.k1 = 1.0;
  CHECK(envelope_Pk_plus_1(p, 2, 5.0, 1.0, 1.0, 2.0, 9.0, 1.0) ==
        doctest::Approx(9.0));
  p.T = 0.5;
  p.k1 = 0.0;
  CHECK(envelope_Pk_plus_1(p, 2, 5.0, 1.0, 1.0, 2.0, 9.0, 0.0) ==
        doctest::Approx(9.0));
  // continuity of the closed form as the linear coefficient vanishes
  p.k1 = 1e-12;
  CHECK(envelope_Pk_plus_1(p, 2, 5.0, 1.0, 1.0, 2.0, 9.0, 0.0) ==
        doctest::Approx(9.0).epsilon(1e-6));
  p.k1 = 1.0;
  const double grown = envelope_Pk_plus_1(p, 2, 5.0, 1.0, 1.0, 2.0, 9.0, 1.0);
  CHECK(grown > 9.0);
}

TEST_CASE("negative-order envelope") {
  EnvelopeParams p;
  p.T = 1.0;
  p.k2 = 0.0;
  p.eta_omega = 4.0;
  CHECK(envelope_P_negative(p, 0.5, 2.0, 1.0, 1.0) == doctest::Approx(2.0));
  p.k2 = 1.0;
  p.eta_omega = 1.0;
  CHECK(envelope_P_negative(p, 0.5, 2.0, 1.0, 1.0) == doctest::Approx(2.0));
  p.eta_omega = 4.0;
  CHECK(envelope_P_negative(p, 0.5, 1.0, 1.0, 1.0) ==
        doctest::Approx(2.0 * std::exp(12.0) - 1.0));
  CHECK_THROWS_AS(envelope_P_negative(p, 0.5, 1.0, 1.0, 0.0), InputError);
}

TEST_CASE("envelopes grow with the horizon") {
  EnvelopeParams p;
  p.k1 = 0.7;
  p.k2 = 0.3;
  p.mu = 1.0;
  p.N = 2.0;
  p.eta_omega = 4.0;
  double prev0 = 0.0, prev2 = 0.0, prevn = 0.0;
  for (double T : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    p.T = T;
    const double P0 = envelope_P0(p, 1.0, 1.0);
    const double P2 = envelope_P2(p, 1.0, P0, 1.0);
    const double Pn = envelope_P_negative(p, 0.5, 1.0, P0, 1.0);
    if (T > 0.0) {
      CHECK(P0 > prev0);
      CHECK(P2 > prev2);
      CHECK(Pn > prevn);
    }
    prev0 = P0;
    prev2 = P2;
    prevn = Pn;
  }
}

TEST_CASE("pointwise density bound") {
  EnvelopeParams p;
  p.k1 = 2.0;
  p.mu = 1.0;
  p.sigma = 0.0;
  p.lambda1 = 1.0;
  p.lambda2 = 1.0;
  CHECK(uniform_bound_E(1.0, 0.0, 3.0, p) == doctest::Approx(3.0));
  CHECK(uniform_bound_E(1.0, std::log(2.0), 1.0, p) ==
        doctest::Approx(2.0 * std::exp(2.0)));
  p.k1 = 0.0;
  CHECK(uniform_bound_E(1.0, 1.0, 3.0, p) == doctest::Approx(3.0 * std::exp(1.0)));
  CHECK_THROWS_AS(uniform_bound_E(2.0, 0.0, 1.0, p), std::domain_error);
}

TEST_CASE("the two sup-bound forms disagree unless the window is a point") {
  EnvelopeParams p;
  p.k1 = 1.0;
  p.mu = 0.0;
  p.sigma = 0.0;
  p.lambda1 = 0.5;
  p.lambda2 = 2.0;
  CHECK(sup_bound_discrepancy(1.0, 1.0, p));
  CHECK(sup_bound_from_E(1.0, 1.0, p) > sup_bound_S(1.0, 1.0, p));
  p.lambda2 = p.lambda1;
  // lambda1^{1-sigma} equals lambda2 * lambda1^{-sigma} exactly here
  CHECK_FALSE(sup_bound_discrepancy(1.0, 1.0, p));
}

TEST_CASE("initial pointwise bound") {
  const MassGrid g = build_geometric_grid(0.5, 8.0, 4);
  EnvelopeParams p;
  p.sigma = 0.0;
  p.lambda1 = g.x_min;
  p.lambda2 = g.x_max;
  p.k2 = 0.0;
  std::vector<double> d = {1.0, 5.0, 2.0, 0.5};
  CHECK(initial_bound_E0(d, g, p, 2.0, 1.0, 1.0) == doctest::Approx(5.0));
  // the fragmentation source term takes over when it dominates
  p.k2 = 100.0;
  const double source = 100.0 * std::pow(0.5, -1.0) * 2.0 * 4.0;
  CHECK(initial_bound_E0(d, g, p, 2.0, 1.0, 1.0) == doctest::Approx(source));
}
