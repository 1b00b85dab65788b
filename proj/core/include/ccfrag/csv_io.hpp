#ifndef CCFRAG_CSV_IO_HPP_
#define CCFRAG_CSV_IO_HPP_

#include <string>
#include <vector>

#include "ccfrag/solver.hpp"

namespace ccfrag {

/// 17 significant digits; enough to make determinism checks exact.
std::string format_number(double v);

/// Columns: t, M_minus_omega, M0, M1, M2, [M_xi...], mass_drift,
/// overflow_mass, dt. mass_drift is the raw relative first-moment drift.
std::string trajectory_csv(const Trajectory& traj, double omega,
                           const std::vector<double>& extra_xi);

/// Columns: cell_index, pivot, width, density.
std::string snapshot_csv(const Trajectory& traj, std::size_t sample);

/// Rows: t, moment, envelope, margin (one block per tracked order).
struct EnvelopeRow {
  std::string label;
  double t = 0.0;
  double value = 0.0;
  double envelope = 0.0;
};
std::string envelope_csv(const std::vector<EnvelopeRow>& rows);

/// Rows: t, Q, bound, margin.
std::string contraction_csv(const std::vector<double>& times,
                            const std::vector<double>& Q,
                            const std::vector<double>& bounds);

void write_file(const std::string& path, const std::string& content);

}  // namespace ccfrag

#endif
