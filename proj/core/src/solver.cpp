#include "ccfrag/solver.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ccfrag/errors.hpp"

namespace ccfrag {

namespace {

// Mass of power-law fragments in [a, b] from a parent of mass y:
// integral of x * ((nu+2)/y)(x/y)^nu dx = y [(x/y)^{nu+2}] over [a, b].
double power_law_cell_mass(double nu, double y, double a, double b) {
  a = std::min(a, y);
  b = std::min(b, y);
  if (!(b > a)) return 0.0;
  return y * (std::pow(b / y, nu + 2.0) - std::pow(a / y, nu + 2.0));
}

}  // namespace

SectionalOperator::SectionalOperator(const MassGrid& grid,
                                     const TruncatedKernelPair& kernels,
                                     const BreakupKernel& breakup,
                                     unsigned n_threads)
    : grid_(grid), n_threads_(std::max(1u, n_threads)) {
  const std::size_t n = grid_.n_cells;
  const auto& p = grid_.pivots;

  coag_rate_.resize(n * n);
  coll_rate_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      coag_rate_[i * n + j] = kernels.eval_K(p[i], p[j]);
      coll_rate_[i * n + j] = kernels.eval_C(p[i], p[j]);
    }
  }

  // Fixed-pivot assignment of coagulation births. A pair sum between two
  // pivots is split so that both number and mass are preserved; a sum above
  // the last pivot but still on the grid is deposited there with the
  // mass-preserving number fraction v/p_last.
  birth_terms_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      const double sym = (j == k) ? 0.5 : 1.0;
      const double v = p[j] + p[k];
      if (v > grid_.x_max) {
        overflow_terms_.push_back({static_cast<std::uint32_t>(j),
                                   static_cast<std::uint32_t>(k), sym * v});
        continue;
      }
      auto jj = static_cast<std::uint32_t>(j);
      auto kk = static_cast<std::uint32_t>(k);
      std::size_t l = k;
      while (l + 1 < n && p[l + 1] <= v) ++l;
      if (l == n - 1) {
        birth_terms_[l].push_back({jj, kk, sym * v / p[l]});
      } else {
        const double span = p[l + 1] - p[l];
        birth_terms_[l].push_back({jj, kk, sym * (p[l + 1] - v) / span});
        birth_terms_[l + 1].push_back({jj, kk, sym * (v - p[l]) / span});
      }
    }
  }

  // Fragment number weights b_{i<-j}: mass of daughters landing in cell i,
  // renormalized so the deposited pivot mass equals the parent mass p_j
  // exactly, then converted to numbers at pivot i. The renormalization
  // redistributes the (usually tiny) daughter mass below x_min.
  fragment_weights_.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    std::vector<double> cell_mass(j + 1, 0.0);
    for (std::size_t i = 0; i <= j; ++i) {
      const double a = grid_.edges[i];
      const double b = std::min(grid_.edges[i + 1], p[j]);
      if (!(b > a)) continue;
      if (breakup.family == BreakupFamily::kPowerLaw) {
        cell_mass[i] = power_law_cell_mass(breakup.nu, p[j], a, b);
      } else {
        cell_mass[i] = gauss16(
            [&](double x) { return x * breakup(x, p[j], p[j]); }, a, b, 4);
      }
      total += cell_mass[i];
    }
    if (total <= 0.0) {
      // Degenerate parent (all daughter mass below the grid): the breakup
      // leaves the particle in place.
      fragment_weights_[j * n + j] = 1.0;
      continue;
    }
    const double scale = p[j] / total;
    for (std::size_t i = 0; i <= j; ++i) {
      fragment_weights_[j * n + i] = scale * cell_mass[i] / p[i];
    }
  }
}

double SectionalOperator::fragment_weight(std::size_t i, std::size_t j) const {
  return fragment_weights_[j * grid_.n_cells + i];
}

void SectionalOperator::rhs_cells(const std::vector<double>& number,
                                  const std::vector<double>& collision_rate,
                                  std::vector<double>& dgdt, std::size_t begin,
                                  std::size_t end) const {
  const std::size_t n = grid_.n_cells;
  for (std::size_t i = begin; i < end; ++i) {
    double coag_death = 0.0;
    const double* krow = &coag_rate_[i * n];
    for (std::size_t j = 0; j < n; ++j) coag_death += krow[j] * number[j];

    double birth = 0.0;
    for (const auto& term : birth_terms_[i]) {
      birth += term.weight * coag_rate_[term.j * n + term.k] * number[term.j] *
               number[term.k];
    }
    for (std::size_t j = i; j < n; ++j) {
      birth += fragment_weights_[j * n + i] * number[j] * collision_rate[j];
    }

    const double rate =
        birth - number[i] * coag_death - number[i] * collision_rate[i];
    if (!std::isfinite(rate)) {
      throw NumericalError("non-finite rate in cell " + std::to_string(i));
    }
    dgdt[i] = rate / grid_.widths[i];
  }
}

RhsResult SectionalOperator::rhs(const State& state) const {
  const std::size_t n = grid_.n_cells;
  std::vector<double> number(n);
  for (std::size_t i = 0; i < n; ++i)
    number[i] = state.density[i] * grid_.widths[i];

  // Collision rate experienced by a particle in cell j, fixed summation order.
  std::vector<double> collision_rate(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    const double* crow = &coll_rate_[j * n];
    for (std::size_t k = 0; k < n; ++k) acc += crow[k] * number[k];
    collision_rate[j] = acc;
  }

  RhsResult out;
  out.dgdt.resize(n);
  const unsigned workers =
      std::min<unsigned>(n_threads_, static_cast<unsigned>(n));
  if (workers <= 1) {
    rhs_cells(number, collision_rate, out.dgdt, 0, n);
  } else {
    // Static partition over destination cells; each cell is summed serially
    // by exactly one worker, so the result does not depend on the count.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      pool.emplace_back([&, begin, end] {
        rhs_cells(number, collision_rate, out.dgdt, begin, end);
      });
    }
    for (auto& t : pool) t.join();
  }

  for (const auto& term : overflow_terms_) {
    out.overflow_mass_rate += term.mass_weight *
                              coag_rate_[term.j * n + term.k] *
                              number[term.j] * number[term.k];
  }
  return out;
}

StepResult step(const SectionalOperator& op, const State& state,
                const SolverConfig& config, double dt) {
  if (!(dt > 0.0)) throw ConfigError("step: dt must be positive");
  const std::size_t n = state.density.size();

  const RhsResult f0 = op.rhs(state);
  State stage1{state.t + dt, std::vector<double>(n), state.step_count};
  for (std::size_t i = 0; i < n; ++i)
    stage1.density[i] = state.density[i] + dt * f0.dgdt[i];
  const RhsResult f1 = op.rhs(stage1);

  StepResult result;
  result.state.t = state.t + dt;
  result.state.step_count = state.step_count + 1;
  result.state.density.resize(n);
  double scale = 0.0;
  for (double g : state.density) scale = std::max(scale, std::abs(g));
  scale = std::max(scale, 1e-300);

  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u2 = 0.5 * state.density[i] +
                      0.5 * (stage1.density[i] + dt * f1.dgdt[i]);
    err = std::max(err, std::abs(u2 - stage1.density[i]) / scale);
    result.state.density[i] = u2;
  }
  result.error = err;
  result.overflow_mass =
      0.5 * dt * (f0.overflow_mass_rate + f1.overflow_mass_rate);

  if (err > config.dt_tol) return result;  // rejected

  for (std::size_t i = 0; i < n; ++i) {
    if (result.state.density[i] < 0.0) {
      if (config.positivity == PositivityMode::kRejectStep) return result;
      result.clipped_mass += -result.state.density[i] * op.grid().pivots[i] *
                             op.grid().widths[i];
      result.state.density[i] = 0.0;
    }
  }
  result.accepted = true;
  return result;
}

Trajectory run(const SolverConfig& config, const std::vector<double>& g0_cells) {
  if (!(config.t_end > 0.0) || !(config.dt_init > 0.0)) {
    throw ConfigError("run: t_end and dt_init must be positive");
  }
  if (g0_cells.size() != config.grid.n_cells) {
    throw ConfigError("run: initial condition size does not match grid");
  }
  const std::size_t samples = std::max<std::size_t>(2, config.sample_count);

  SectionalOperator op(config.grid, config.kernels, config.breakup,
                       config.n_threads);

  Trajectory traj;
  traj.grid = config.grid;
  State state{0.0, g0_cells, 0};
  double overflow_total = 0.0;
  double clipped_total = 0.0;
  double dt_ctrl = config.dt_init;
  double dt_last = config.dt_init;

  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.densities.push_back(state.density);
    traj.dt_history.push_back(dt_last);
    traj.overflow_mass.push_back(overflow_total);
    traj.clipped_mass.push_back(clipped_total);
  };
  record(0.0);

  const double dt_floor = 1e-12 * config.t_end;
  try {
    for (std::size_t s = 1; s < samples; ++s) {
      const double t_target =
          config.t_end * static_cast<double>(s) / static_cast<double>(samples - 1);
      while (state.t < t_target * (1.0 - 1e-14)) {
        if (state.step_count >= config.max_steps) {
          throw NumericalError("run: max_steps exceeded");
        }
        const double dt_try = std::min(dt_ctrl, t_target - state.t);
        StepResult r = step(op, state, config, dt_try);
        if (!r.accepted) {
          dt_ctrl = 0.5 * dt_try;
          if (dt_ctrl < dt_floor) {
            throw StiffnessError("run: step size underflow at t=" +
                                 std::to_string(state.t));
          }
          continue;
        }
        state = std::move(r.state);
        overflow_total += r.overflow_mass;
        clipped_total += r.clipped_mass;
        dt_last = dt_try;
        const double grow =
            0.9 * std::sqrt(config.dt_tol / std::max(r.error, 1e-30));
        const double suggestion = dt_try * std::clamp(grow, 0.3, 2.0);
        // A step capped at a sample boundary must not shrink the controller.
        dt_ctrl = (dt_try < dt_ctrl) ? std::max(dt_ctrl, suggestion) : suggestion;
      }
      record(t_target);
    }
  } catch (const NumericalError& e) {
    traj.completed = false;
    traj.failure = e.what();
  }
  traj.total_steps = state.step_count;
  return traj;
}

Trajectory run(const SolverConfig& config,
               const std::function<double(double)>& g0) {
  return run(config, project_initial_condition(config.grid, g0));
}

}  // namespace ccfrag
