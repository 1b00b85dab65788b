#ifndef CCFRAG_RUN_CONFIG_HPP_
#define CCFRAG_RUN_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ccfrag/kernels.hpp"
#include "ccfrag/solver.hpp"

namespace ccfrag {

/// Initial condition families; densities, except monodisperse which places
/// `amplitude` particles in the cell containing `center`.
struct InitialCondition {
  std::string type = "zero";  // zero|constant|exponential|gaussian|monodisperse
  double amplitude = 1.0;
  double scale = 1.0;   // exponential decay scale
  double center = 1.0;  // gaussian / monodisperse location
  double width = 0.1;   // gaussian width

  std::vector<double> project(const MassGrid& grid) const;
};

/// Fully deterministic run description; serializes to canonical JSON that
/// round-trips byte-identically.
struct RunConfig {
  double x_min = 1e-3;
  double x_max = 1e3;
  std::size_t n_cells = 60;

  CoagulationKernel K;
  CollisionKernel C;
  BreakupKernel B;
  unsigned truncation_n = 1;

  double t_end = 1.0;
  double dt_init = 1e-4;
  double dt_safety = 1e-6;
  std::size_t sample_count = 11;
  std::uint64_t max_steps = 50'000'000;
  std::string positivity = "clip_and_report";

  InitialCondition initial;

  std::vector<double> extra_xi;  // tracked beyond {-omega, 0, 1, 2}
  double omega = 0.5;

  double theta = 0.5;
  double sigma1 = 2.0;
  double sigma2 = 0.9;
  double mass_tolerance = 1e-6;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string serialize_run_config(const RunConfig& config);

/// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const RunConfig& config);

SolverConfig make_solver_config(const RunConfig& config, unsigned n_threads);

}  // namespace ccfrag

#endif
