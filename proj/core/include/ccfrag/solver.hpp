#ifndef CCFRAG_SOLVER_HPP_
#define CCFRAG_SOLVER_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccfrag/grid.hpp"
#include "ccfrag/kernels.hpp"

namespace ccfrag {

struct State {
  double t = 0.0;
  std::vector<double> density;  // cell-averaged g
  std::uint64_t step_count = 0;
};

enum class PositivityMode : std::uint8_t {
  kClipAndReport,
  kRejectStep,
};

struct SolverConfig {
  MassGrid grid;
  TruncatedKernelPair kernels;
  BreakupKernel breakup;
  double t_end = 1.0;
  double dt_init = 1e-4;
  double dt_tol = 1e-6;  // embedded-error acceptance tolerance (dt_safety)
  PositivityMode positivity = PositivityMode::kClipAndReport;
  std::uint64_t max_steps = 50'000'000;
  std::size_t sample_count = 11;
  unsigned n_threads = 1;
};

struct Trajectory {
  MassGrid grid;
  std::uint64_t config_hash = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> densities;  // per sample
  std::vector<double> dt_history;              // accepted dt at each sample
  std::vector<double> overflow_mass;           // cumulative, per sample
  std::vector<double> clipped_mass;            // cumulative, per sample
  std::uint64_t total_steps = 0;
  bool completed = true;
  std::string failure;
};

struct RhsResult {
  std::vector<double> dgdt;          // density rate per cell
  double overflow_mass_rate = 0.0;   // birth mass of pairs exceeding x_max
};

/// Conservative sectional discretization of the truncated system. All
/// kernel values, fixed-pivot pair splits and fragment cell weights are
/// precomputed at construction; rhs() is pure arithmetic in a fixed order,
/// so results are identical for any thread count.
class SectionalOperator {
 public:
  SectionalOperator(const MassGrid& grid, const TruncatedKernelPair& kernels,
                    const BreakupKernel& breakup, unsigned n_threads = 1);

  RhsResult rhs(const State& state) const;

  /// Number weight deposited into cell i per breakup of a particle at pivot
  /// j (mass-exact by construction). Exposed for tests.
  double fragment_weight(std::size_t i, std::size_t j) const;

  const MassGrid& grid() const { return grid_; }

 private:
  void rhs_cells(const std::vector<double>& number,
                 const std::vector<double>& collision_rate,
                 std::vector<double>& dgdt, std::size_t begin,
                 std::size_t end) const;

  MassGrid grid_;
  unsigned n_threads_;
  std::vector<double> coag_rate_;  // n x n, K_n(p_i, p_j)
  std::vector<double> coll_rate_;  // n x n, C_n(p_i, p_j)

  struct BirthTerm {
    std::uint32_t j;
    std::uint32_t k;
    double weight;  // symmetry factor times split fraction (a number weight)
  };
  std::vector<std::vector<BirthTerm>> birth_terms_;  // per destination cell

  struct OverflowTerm {
    std::uint32_t j;
    std::uint32_t k;
    double mass_weight;  // symmetry factor times (p_j + p_k)
  };
  std::vector<OverflowTerm> overflow_terms_;

  std::vector<double> fragment_weights_;  // n x n, column j = parent pivot j
};

struct StepResult {
  State state;
  bool accepted = false;
  double error = 0.0;
  double clipped_mass = 0.0;
  double overflow_mass = 0.0;
};

/// One explicit SSP2 attempt with the given dt. The embedded error is the
/// max-norm gap between the first-order stage and the second-order update,
/// scaled by the current density magnitude.
StepResult step(const SectionalOperator& op, const State& state,
                const SolverConfig& config, double dt);

Trajectory run(const SolverConfig& config, const std::vector<double>& g0_cells);
Trajectory run(const SolverConfig& config,
               const std::function<double(double)>& g0);

}  // namespace ccfrag

#endif
