#include "ccfrag/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ccfrag/errors.hpp"
#include "ccfrag/moments.hpp"

namespace ccfrag {

MassConservationReport mass_conservation_report(const Trajectory& traj,
                                                double tolerance) {
  if (traj.times.empty()) throw InputError("mass report: empty trajectory");
  MassConservationReport report;
  report.tolerance = tolerance;
  const double m1_0 = moment(traj.densities.front(), traj.grid, 1.0);
  report.initial_mass = m1_0;
  report.absolute = m1_0 == 0.0;
  const double scale = report.absolute ? 1.0 : m1_0;
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    const double m1 = moment(traj.densities[s], traj.grid, 1.0);
    const double raw = std::abs(m1 - m1_0) / scale;
    const double adjusted =
        std::abs(m1 + traj.overflow_mass[s] - traj.clipped_mass[s] - m1_0) /
        scale;
    report.raw_max_drift = std::max(report.raw_max_drift, raw);
    report.adjusted_max_drift = std::max(report.adjusted_max_drift, adjusted);
  }
  report.pass = report.adjusted_max_drift <= tolerance;
  return report;
}

double weighted_norm(const std::vector<double>& density, const MassGrid& grid,
                     double sigma1, double sigma2) {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double p = grid.pivots[i];
    acc += (std::pow(p, sigma1) + std::pow(p, -sigma2)) *
           std::abs(density[i]) * grid.widths[i];
  }
  return acc;
}

double trajectory_norm(const Trajectory& traj, double sigma1, double sigma2) {
  double sup = 0.0;
  for (const auto& d : traj.densities) {
    sup = std::max(sup, weighted_norm(d, traj.grid, sigma1, sigma2));
  }
  return sup;
}

double q_distance(const std::vector<double>& g, const std::vector<double>& h,
                  const MassGrid& grid, double theta) {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double p = grid.pivots[i];
    acc += (p + std::pow(p, -theta)) * std::abs(g[i] - h[i]) * grid.widths[i];
  }
  return acc;
}

std::vector<double> uniqueness_distance(const Trajectory& run_g,
                                        const Trajectory& run_h, double theta) {
  if (!run_g.grid.same_as(run_h.grid)) {
    throw ConfigError("uniqueness distance: grids differ");
  }
  if (run_g.times != run_h.times) {
    throw ConfigError("uniqueness distance: sample times differ");
  }
  std::vector<double> q(run_g.times.size());
  for (std::size_t s = 0; s < q.size(); ++s) {
    q[s] = q_distance(run_g.densities[s], run_h.densities[s], run_g.grid,
                      theta);
  }
  return q;
}

double gronwall_constant_psi(double norm_g, double norm_h, double k1,
                             double mu, double k2, double eta_theta) {
  const double pow2 = std::pow(2.0, mu);
  return 4.0 * (pow2 * k1 * norm_g + pow2 * k1 * norm_h + 2.0 * k2 * norm_g +
                k2 * (eta_theta + 1.0) * norm_g + k2 * eta_theta * norm_h);
}

ContractionReport contraction_check(const std::vector<double>& times,
                                    const std::vector<double>& Q, double psi,
                                    double rel_tol) {
  if (times.size() != Q.size()) {
    throw ConfigError("contraction check: size mismatch");
  }
  ContractionReport report;
  const double q0 = Q.empty() ? 0.0 : Q.front();
  double scale = 0.0;
  for (double q : Q) scale = std::max(scale, std::abs(q));
  for (std::size_t s = 0; s < Q.size(); ++s) {
    const double bound = q0 * std::exp(psi * times[s]);
    report.bounds.push_back(bound);
    report.margins.push_back(bound - Q[s]);
    if (Q[s] > bound * (1.0 + rel_tol) + 1e-14 * scale) {
      report.pass = false;
      if (!report.first_violation_time) report.first_violation_time = times[s];
    }
  }
  return report;
}

std::vector<TruncationConvergenceRow> truncation_convergence(
    const SolverConfig& base, const std::vector<double>& g0_cells,
    const std::vector<unsigned>& n_list, double theta) {
  if (!n_list.empty()) {
    const double n_max = static_cast<double>(
        *std::max_element(n_list.begin(), n_list.end()));
    if (base.grid.x_min > 1.0 / n_max || base.grid.x_max < n_max) {
      throw ConfigError("truncation study: grid does not cover [1/n, n]");
    }
  }
  std::vector<Trajectory> runs;
  for (unsigned n : n_list) {
    SolverConfig cfg = base;
    cfg.kernels = truncate(base.kernels.base_K, base.kernels.base_C, n);
    runs.push_back(run(cfg, g0_cells));
  }
  std::vector<TruncationConvergenceRow> rows;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    const auto q = uniqueness_distance(runs[i], runs[i + 1], theta);
    TruncationConvergenceRow row;
    row.n_lo = n_list[i];
    row.n_hi = n_list[i + 1];
    row.sup_Q = *std::max_element(q.begin(), q.end());
    rows.push_back(row);
  }
  return rows;
}

double oracle_constant_kernel_M0(double k, double M0_init, double t) {
  return M0_init / (1.0 + k * M0_init * t * 0.5);
}

Trajectory oracle_dense_ode(const SolverConfig& config,
                            const std::vector<double>& g0_cells) {
  const std::size_t n = config.grid.n_cells;
  if (n > 6) throw ConfigError("dense oracle: limited to 6 cells");

  const auto& p = config.grid.pivots;
  const auto& e = config.grid.edges;
  const auto& w = config.grid.widths;

  // Daughter mass of the breakup of a particle of mass y landing in [a, b].
  auto daughter_mass = [&](double y, double a, double b) {
    a = std::min(a, y);
    b = std::min(b, y);
    if (b <= a) return 0.0;
    if (config.breakup.family == BreakupFamily::kPowerLaw) {
      const double nu = config.breakup.nu;
      return y * (std::pow(b / y, nu + 2.0) - std::pow(a / y, nu + 2.0));
    }
    // trapezoid with many panels is plenty for a reference at this scale
    const int panels = 4000;
    double acc = 0.0;
    const double h = (b - a) / panels;
    for (int q = 0; q <= panels; ++q) {
      const double x = a + q * h;
      const double weight = (q == 0 || q == panels) ? 0.5 : 1.0;
      acc += weight * x * config.breakup(x, y, y);
    }
    return acc * h;
  };

  const std::size_t samples = std::max<std::size_t>(2, config.sample_count);
  const std::uint64_t per_sample =
      static_cast<std::uint64_t>(std::ceil(1e6 / (samples - 1.0)));
  const std::uint64_t total = per_sample * (samples - 1);
  const double dt = config.t_end / static_cast<double>(total);

  std::vector<double> m(n);  // numbers per cell
  for (std::size_t i = 0; i < n; ++i) m[i] = g0_cells[i] * w[i];

  Trajectory traj;
  traj.grid = config.grid;
  double overflow = 0.0;
  auto record = [&](double t) {
    traj.times.push_back(t);
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = m[i] / w[i];
    traj.densities.push_back(g);
    traj.dt_history.push_back(dt);
    traj.overflow_mass.push_back(overflow);
    traj.clipped_mass.push_back(0.0);
  };
  record(0.0);

  std::vector<double> md(n);
  for (std::uint64_t s = 1; s <= total; ++s) {
    for (std::size_t i = 0; i < n; ++i) md[i] = 0.0;
    double ov_rate = 0.0;

    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double krate =
            config.kernels.eval_K(p[j], p[k]) * m[j] * m[k];
        // coagulation death of j by pairing with k
        md[j] -= krate;
        if (k < j) continue;  // births handled once per unordered pair
        const double pair = (k == j) ? 0.5 * krate : krate;
        const double v = p[j] + p[k];
        if (v > config.grid.x_max) {
          ov_rate += pair * v;
          continue;
        }
        std::size_t l = k;
        while (l + 1 < n && p[l + 1] <= v) ++l;
        if (l == n - 1) {
          md[l] += pair * v / p[l];
        } else {
          md[l] += pair * (p[l + 1] - v) / (p[l + 1] - p[l]);
          md[l + 1] += pair * (v - p[l]) / (p[l + 1] - p[l]);
        }
      }
    }

    for (std::size_t j = 0; j < n; ++j) {
      double crate = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        crate += config.kernels.eval_C(p[j], p[k]) * m[k];
      }
      crate *= m[j];
      md[j] -= crate;  // fragmentation death
      double masses[6];
      double mass_total = 0.0;
      for (std::size_t i = 0; i <= j; ++i) {
        masses[i] = daughter_mass(p[j], e[i], e[i + 1]);
        mass_total += masses[i];
      }
      if (mass_total > 0.0) {
        for (std::size_t i = 0; i <= j; ++i) {
          md[i] += crate * (p[j] / mass_total) * masses[i] / p[i];
        }
      } else {
        md[j] += crate;
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      m[i] += dt * md[i];
      if (m[i] < 0.0) m[i] = 0.0;
    }
    overflow += dt * ov_rate;
    if (s % per_sample == 0) {
      record(config.t_end * static_cast<double>(s / per_sample) /
             static_cast<double>(samples - 1));
    }
  }
  traj.total_steps = total;
  return traj;
}

}  // namespace ccfrag
