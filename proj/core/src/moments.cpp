#include "ccfrag/moments.hpp"

#include <algorithm>
#include <cmath>

#include "ccfrag/errors.hpp"

namespace ccfrag {

double moment(const std::vector<double>& density, const MassGrid& grid,
              double xi) {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    acc += std::pow(grid.pivots[i], xi) * density[i] * grid.widths[i];
  }
  return acc;
}

double moment(const State& state, const MassGrid& grid, double xi) {
  return moment(state.density, grid, xi);
}

double EnvelopeParams::k_mu() const {
  return std::max(1.0, std::pow(2.0, mu - 1.0));
}

double envelope_P0(const EnvelopeParams& params, double M0_init, double P1) {
  const double c = params.k2 * (params.N - 1.0);
  return (M0_init + 4.0 * c * P1 * P1 * params.T) *
         std::exp(8.0 * c * P1 * params.T);
}

double envelope_P2(const EnvelopeParams& params, double M2_init, double P0,
                   double P1) {
  const double km = params.k_mu();
  const double pow3 = std::pow(3.0, params.mu);
  const double denom = pow3 * P0 + km * P1;
  if (!(denom > 0.0)) return M2_init;  // zero initial data
  const double e = std::exp(denom * 2.0 * params.k1 * params.T);
  return M2_init * e +
         0.5 * (pow3 * P0 * P0 + km * P1 * P1) / denom * (e - 1.0);
}

double envelope_Pk_plus_1(const EnvelopeParams& params, int k, double Pk,
                          double P0, double P1, double P2, double Mk1_init,
                          double Omega) {
  const double binom = static_cast<double>(k + 1);  // C(k+1, 1)
  const double km = params.k_mu();
  const double pow3 = std::pow(3.0, params.mu);
  const double omega2 = Omega + binom * 3.0 * params.k1 * P0 * P0 +
                        2.0 * binom * params.k1 * pow3 * P0 * P2 +
                        binom * params.k1 * km * Pk * P1 +
                        binom * params.k1 * km * Pk * P2;
  const double b = binom * params.k1 * km * P1;
  const double e = std::exp(b * params.T);
  if (omega2 == 0.0) return Mk1_init * e;  // limit form
  return e * (b / omega2 + Mk1_init) - b / omega2;
}

double envelope_P_negative(const EnvelopeParams& params, double omega,
                           double Mneg_init, double P0, double P1) {
  if (!(P1 > 0.0)) throw InputError("envelope_P_negative: P1 must be positive");
  const double e = std::exp(2.0 * (params.eta_omega - 1.0) * params.k2 *
                            (P0 + P1) * params.T);
  (void)omega;
  return e * (1.0 / P1 + Mneg_init) - 1.0 / P1;
}

double uniform_bound_E(double x, double t, double E0,
                       const EnvelopeParams& params) {
  if (x < params.lambda1 || x > params.lambda2) {
    throw std::domain_error("uniform_bound_E: x outside [lambda1, lambda2]");
  }
  return E0 * std::exp(0.5 * params.k1 * E0 * x *
                           std::pow(1.0 + params.lambda2, params.mu) *
                           std::pow(params.lambda1, -params.sigma) *
                           (std::exp(t) - 1.0) +
                       t);
}

double sup_bound_S(double T, double E0, const EnvelopeParams& params) {
  return E0 * std::exp(0.5 * E0 * params.k1 *
                           std::pow(1.0 + params.lambda2, params.mu) *
                           std::pow(params.lambda1, 1.0 - params.sigma) *
                           (std::exp(T) - 1.0) +
                       T);
}

double sup_bound_from_E(double T, double E0, const EnvelopeParams& params) {
  // E is increasing in x, so the sup sits at lambda2.
  return uniform_bound_E(params.lambda2, T, E0, params);
}

bool sup_bound_discrepancy(double T, double E0, const EnvelopeParams& params) {
  const double a = sup_bound_S(T, E0, params);
  const double b = sup_bound_from_E(T, E0, params);
  return std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b));
}

double initial_bound_E0(const std::vector<double>& density,
                        const MassGrid& grid, const EnvelopeParams& params,
                        double B_tilde, double P0, double P1) {
  double sup_scaled = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double p = grid.pivots[i];
    if (p < params.lambda1 || p > params.lambda2) continue;
    sup_scaled =
        std::max(sup_scaled, density[i] / std::pow(p, params.sigma));
  }
  const double source = params.k2 *
                        std::pow(params.lambda1, -params.sigma - 1.0) *
                        B_tilde * (P0 + P1) * (P0 + P1);
  return std::max(sup_scaled, source);
}

}  // namespace ccfrag
