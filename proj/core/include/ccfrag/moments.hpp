#ifndef CCFRAG_MOMENTS_HPP_
#define CCFRAG_MOMENTS_HPP_

#include <vector>

#include "ccfrag/grid.hpp"
#include "ccfrag/solver.hpp"

namespace ccfrag {

/// Discrete moment sum pivot_i^xi * density_i * width_i.
double moment(const std::vector<double>& density, const MassGrid& grid,
              double xi);
double moment(const State& state, const MassGrid& grid, double xi);

/// Constants feeding the explicit Gronwall moment envelopes. All values are
/// declared kernel bounds, not fitted quantities.
struct EnvelopeParams {
  double T = 1.0;
  double k1 = 1.0;
  double mu = 0.0;
  double sigma = 0.0;
  double k2 = 0.0;
  double alpha = 0.0;
  double N = 1.0;         // sup fragment count
  double eta_omega = 1.0; // eta at the tracked negative order
  double omega = 0.5;     // negative-moment order, in (sigma, 1)
  double lambda1 = 1.0;   // rectangle bounds for the pointwise bound
  double lambda2 = 1.0;

  /// Subadditivity constant with (x+y)^mu <= k(mu)(x^mu + y^mu); the sharp
  /// value for mu >= 1 and valid (value 1) on [0, 1].
  double k_mu() const;
};

double envelope_P0(const EnvelopeParams& params, double M0_init, double P1);
double envelope_P2(const EnvelopeParams& params, double M2_init, double P0,
                   double P1);

/// Recursive envelope for the (k+1)-th moment. Omega is the caller-supplied
/// bound on the middle binomial terms; the remaining pieces of Omega_2 are
/// assembled here from P0, P1, P2 and Pk.
double envelope_Pk_plus_1(const EnvelopeParams& params, int k, double Pk,
                          double P0, double P1, double P2, double Mk1_init,
                          double Omega);

double envelope_P_negative(const EnvelopeParams& params, double omega,
                           double Mneg_init, double P0, double P1);

/// Pointwise bound E(x,t) on the scaled density, valid on
/// [lambda1, lambda2] x [0, T].
double uniform_bound_E(double x, double t, double E0,
                       const EnvelopeParams& params);

/// The companion sup bound S(T) as printed (exponent lambda1^{1-sigma}); it
/// differs from sup_x E(x, T) which carries x * lambda1^{-sigma}. Both are
/// reported; see sup_bound_discrepancy.
double sup_bound_S(double T, double E0, const EnvelopeParams& params);

/// sup over x in [lambda1, lambda2] of E(x, T).
double sup_bound_from_E(double T, double E0, const EnvelopeParams& params);

/// True when the two printed sup-bound forms disagree beyond roundoff.
bool sup_bound_discrepancy(double T, double E0, const EnvelopeParams& params);

/// E(0) = max of the sup-cell scaled initial density g/x^sigma and the
/// fragmentation source constant k2 lambda1^{-sigma-1} B~ (P0+P1)^2.
double initial_bound_E0(const std::vector<double>& density,
                        const MassGrid& grid, const EnvelopeParams& params,
                        double B_tilde, double P0, double P1);

}  // namespace ccfrag

#endif
