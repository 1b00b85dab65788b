#include "ccfrag/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ccfrag/errors.hpp"
#include "ccfrag/moments.hpp"

namespace ccfrag {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj, double omega,
                           const std::vector<double>& extra_xi) {
  std::ostringstream out;
  out << "t,M_minus_omega,M0,M1,M2";
  for (double xi : extra_xi) out << ",M_" << format_number(xi);
  out << ",mass_drift,overflow_mass,dt\n";

  const double m1_0 =
      traj.densities.empty() ? 0.0 : moment(traj.densities.front(), traj.grid, 1.0);
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    const auto& d = traj.densities[s];
    const double m1 = moment(d, traj.grid, 1.0);
    const double drift = m1_0 != 0.0 ? (m1 - m1_0) / m1_0 : m1;
    out << format_number(traj.times[s]) << ','
        << format_number(moment(d, traj.grid, -omega)) << ','
        << format_number(moment(d, traj.grid, 0.0)) << ','
        << format_number(m1) << ','
        << format_number(moment(d, traj.grid, 2.0));
    for (double xi : extra_xi) out << ',' << format_number(moment(d, traj.grid, xi));
    out << ',' << format_number(drift) << ','
        << format_number(traj.overflow_mass[s]) << ','
        << format_number(traj.dt_history[s]) << '\n';
  }
  return out.str();
}

std::string snapshot_csv(const Trajectory& traj, std::size_t sample) {
  std::ostringstream out;
  out << "cell_index,pivot,width,density\n";
  const auto& d = traj.densities.at(sample);
  for (std::size_t i = 0; i < traj.grid.n_cells; ++i) {
    out << i << ',' << format_number(traj.grid.pivots[i]) << ','
        << format_number(traj.grid.widths[i]) << ',' << format_number(d[i])
        << '\n';
  }
  return out.str();
}

std::string envelope_csv(const std::vector<EnvelopeRow>& rows) {
  std::ostringstream out;
  out << "moment,t,value,envelope,margin\n";
  for (const auto& r : rows) {
    out << r.label << ',' << format_number(r.t) << ',' << format_number(r.value)
        << ',' << format_number(r.envelope) << ','
        << format_number(r.envelope - r.value) << '\n';
  }
  return out.str();
}

std::string contraction_csv(const std::vector<double>& times,
                            const std::vector<double>& Q,
                            const std::vector<double>& bounds) {
  std::ostringstream out;
  out << "t,Q,bound,margin\n";
  for (std::size_t s = 0; s < times.size(); ++s) {
    out << format_number(times[s]) << ',' << format_number(Q[s]) << ','
        << format_number(bounds[s]) << ',' << format_number(bounds[s] - Q[s])
        << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

}  // namespace ccfrag
