#ifndef CCFRAG_ANALYSIS_HPP_
#define CCFRAG_ANALYSIS_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "ccfrag/grid.hpp"
#include "ccfrag/solver.hpp"

namespace ccfrag {

struct MassConservationReport {
  double initial_mass = 0.0;
  double raw_max_drift = 0.0;       // |M1(t) - M1(0)| / M1(0), worst sample
  double adjusted_max_drift = 0.0;  // overflow and clipping accounted
  bool absolute = false;            // true when M1(0) == 0
  double tolerance = 1e-6;
  bool pass = false;
};

MassConservationReport mass_conservation_report(const Trajectory& traj,
                                                double tolerance);

/// Sum of (pivot^sigma1 + pivot^-sigma2) |g| width.
double weighted_norm(const std::vector<double>& density, const MassGrid& grid,
                     double sigma1, double sigma2);

/// sup over samples of the weighted norm of a trajectory.
double trajectory_norm(const Trajectory& traj, double sigma1, double sigma2);

/// Weighted L1 distance with weight (x + x^-theta) between two densities on
/// the same grid.
double q_distance(const std::vector<double>& g, const std::vector<double>& h,
                  const MassGrid& grid, double theta);

/// Per-sample Q(t) between two trajectories. Grids and sample times must
/// match exactly.
std::vector<double> uniqueness_distance(const Trajectory& run_g,
                                        const Trajectory& run_h, double theta);

double gronwall_constant_psi(double norm_g, double norm_h, double k1,
                             double mu, double k2, double eta_theta);

struct ContractionReport {
  bool pass = true;
  std::vector<double> bounds;   // Q(0) e^{Psi t_k}
  std::vector<double> margins;  // bound - Q
  std::optional<double> first_violation_time;
};

ContractionReport contraction_check(const std::vector<double>& times,
                                    const std::vector<double>& Q, double psi,
                                    double rel_tol = 1e-9);

struct TruncationConvergenceRow {
  unsigned n_lo = 0;
  unsigned n_hi = 0;
  double sup_Q = 0.0;
};

/// Runs the configuration at each truncation index and reports the sup-over-
/// time Q distance between consecutive runs. The grid must cover
/// [1/max(n), max(n)].
std::vector<TruncationConvergenceRow> truncation_convergence(
    const SolverConfig& base, const std::vector<double>& g0_cells,
    const std::vector<unsigned>& n_list, double theta);

/// Analytic zeroth moment for constant coagulation without collisions.
double oracle_constant_kernel_M0(double k, double M0_init, double t);

/// Brute-force reference: the identical discrete ODE system integrated with
/// fixed-step explicit Euler at dt = 1e-6 t_end, scalar loops only, no code
/// shared with the sectional operator. Limited to 6 cells.
Trajectory oracle_dense_ode(const SolverConfig& config,
                            const std::vector<double>& g0_cells);

}  // namespace ccfrag

#endif
