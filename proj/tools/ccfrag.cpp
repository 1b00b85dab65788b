// Batch front-end: run simulations, check kernel assumptions, compare paired
// runs, and drive truncation studies. All outputs are deterministic CSV/JSON.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccfrag/analysis.hpp"
#include "ccfrag/csv_io.hpp"
#include "ccfrag/errors.hpp"
#include "ccfrag/moments.hpp"
#include "ccfrag/run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace ccfrag;

namespace {

constexpr const char* kVersion = "0.1.0";

struct EnvelopeSummary {
  EnvelopeParams params;
  double M0_init = 0.0, M2_init = 0.0, Mneg_init = 0.0;
  double P1 = 0.0, P0 = 0.0, P2 = 0.0, Pneg = 0.0;
  double E0 = 0.0, S_paper = 0.0, S_from_E = 0.0;
  bool sup_forms_disagree = false;
};

EnvelopeSummary envelope_summary(const RunConfig& cfg, const MassGrid& grid,
                                 const std::vector<double>& g0) {
  EnvelopeSummary s;
  s.params.T = cfg.t_end;
  s.params.k1 = cfg.K.k1;
  s.params.mu = cfg.K.mu;
  s.params.sigma = cfg.K.sigma;
  s.params.k2 = cfg.C.k2;
  s.params.alpha = cfg.C.alpha;
  s.params.N = cfg.B.fragment_sup();
  s.params.omega = cfg.omega;
  s.params.eta_omega = cfg.B.eta(cfg.omega);
  s.params.lambda1 = grid.x_min;
  s.params.lambda2 = grid.x_max;

  s.M0_init = moment(g0, grid, 0.0);
  s.P1 = moment(g0, grid, 1.0);
  s.M2_init = moment(g0, grid, 2.0);
  s.Mneg_init = moment(g0, grid, -cfg.omega);

  s.P0 = envelope_P0(s.params, s.M0_init, s.P1);
  s.P2 = envelope_P2(s.params, s.M2_init, s.P0, s.P1);
  s.Pneg = s.P1 > 0.0
               ? envelope_P_negative(s.params, cfg.omega, s.Mneg_init, s.P0, s.P1)
               : s.Mneg_init;
  s.E0 = initial_bound_E0(g0, grid, s.params, cfg.B.B_tilde, s.P0, s.P1);
  s.S_paper = sup_bound_S(cfg.t_end, s.E0, s.params);
  s.S_from_E = sup_bound_from_E(cfg.t_end, s.E0, s.params);
  s.sup_forms_disagree = sup_bound_discrepancy(cfg.t_end, s.E0, s.params);
  return s;
}

ordered_json envelope_json(const EnvelopeSummary& s) {
  return ordered_json{
      {"P1", s.P1},
      {"P0_T", s.P0},
      {"P2_T", s.P2},
      {"P_neg_omega_T", s.Pneg},
      {"E0", s.E0},
      {"S_T_as_printed", s.S_paper},
      {"S_T_sup_of_E", s.S_from_E},
      {"sup_bound_forms_disagree", s.sup_forms_disagree}};
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

SamplePlan plan_for(const RunConfig& cfg) {
  SamplePlan plan;
  plan.x_max = cfg.x_max;
  plan.theta = cfg.theta;
  plan.sigma1 = cfg.sigma1;
  plan.sigma2 = cfg.sigma2;
  if (cfg.B.family == BreakupFamily::kPowerLaw) {
    // keep the planned negative orders integrable for this nu
    plan.omega_list.clear();
    for (double w : {0.0, 0.25, 0.5, 0.75}) {
      if (w < cfg.B.nu + 1.0 - 1e-9) plan.omega_list.push_back(w);
    }
  }
  return plan;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            unsigned threads) {
  const RunConfig cfg = load_run_config(config_path);
  const SolverConfig solver = make_solver_config(cfg, threads);
  const std::vector<double> g0 = cfg.initial.project(solver.grid);

  fs::create_directories(out_dir);
  const Trajectory traj = [&] {
    Trajectory t = run(solver, g0);
    t.config_hash = config_hash(cfg);
    return t;
  }();

  write_file(out_dir + "/trajectory.csv",
             trajectory_csv(traj, cfg.omega, cfg.extra_xi));
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    char name[40];
    std::snprintf(name, sizeof(name), "/snapshot_%03zu.csv", s);
    write_file(out_dir + name, snapshot_csv(traj, s));
  }

  const EnvelopeSummary env = envelope_summary(cfg, solver.grid, g0);
  std::vector<EnvelopeRow> env_rows;
  bool dominated = true;
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    EnvelopeParams p = env.params;
    p.T = std::max(traj.times[s], 1e-300);
    const double m0 = moment(traj.densities[s], traj.grid, 0.0);
    const double m2 = moment(traj.densities[s], traj.grid, 2.0);
    const double mn = moment(traj.densities[s], traj.grid, -cfg.omega);
    const double p0 = envelope_P0(p, env.M0_init, env.P1);
    const double p2 = envelope_P2(p, env.M2_init, p0, env.P1);
    const double pn = env.P1 > 0.0 ? envelope_P_negative(p, cfg.omega,
                                                         env.Mneg_init, p0,
                                                         env.P1)
                                   : env.Mneg_init;
    env_rows.push_back({"M0", traj.times[s], m0, p0});
    env_rows.push_back({"M2", traj.times[s], m2, p2});
    env_rows.push_back({"M_minus_omega", traj.times[s], mn, pn});
    dominated = dominated && m0 <= env.P0 && m2 <= env.P2 && mn <= env.Pneg;
  }
  write_file(out_dir + "/envelopes.csv", envelope_csv(env_rows));

  const MassConservationReport mass =
      mass_conservation_report(traj, cfg.mass_tolerance);

  ordered_json manifest;
  manifest["config_hash"] = hash_hex(traj.config_hash);
  manifest["tool_version"] = kVersion;
  manifest["config_path"] = config_path;
  manifest["completed"] = traj.completed;
  if (!traj.completed) manifest["failure"] = traj.failure;
  manifest["total_steps"] = traj.total_steps;
  manifest["envelopes"] = envelope_json(env);
  manifest["envelope_dominance"] = dominated;
  manifest["mass_conservation"] = {
      {"raw_max_drift", mass.raw_max_drift},
      {"adjusted_max_drift", mass.adjusted_max_drift},
      {"tolerance", mass.tolerance},
      {"pass", mass.pass}};
  manifest["outputs"] = {"trajectory.csv", "envelopes.csv"};
  write_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");

  if (!traj.completed) {
    std::cerr << "run failed: " << traj.failure << " (partial artifacts in "
              << out_dir << ")\n";
    return 3;
  }
  std::cout << "run complete: " << traj.total_steps << " steps, artifacts in "
            << out_dir << "\n";
  return 0;
}

int cmd_check_kernels(const std::string& config_path) {
  const RunConfig cfg = load_run_config(config_path);
  const AdmissibilityReport report =
      check_admissibility(cfg.K, cfg.C, cfg.B, plan_for(cfg));
  for (const auto& e : report.entries) {
    std::cout << (e.pass ? "PASS " : "FAIL ") << e.name
              << "  worst_ratio=" << format_number(e.worst_ratio);
    if (!e.pass) {
      std::cout << "  witness=(" << format_number(e.witness_x) << ","
                << format_number(e.witness_y) << ")";
    }
    if (!e.note.empty()) std::cout << "  [" << e.note << "]";
    std::cout << "\n";
  }
  return report.all_pass() ? 0 : 1;
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                double theta_override, bool has_theta,
                const std::string& out_dir, unsigned threads) {
  const RunConfig cfg_a = load_run_config(path_a);
  const RunConfig cfg_b = load_run_config(path_b);
  const double theta = has_theta ? theta_override : cfg_a.theta;

  const SolverConfig sa = make_solver_config(cfg_a, threads);
  const SolverConfig sb = make_solver_config(cfg_b, threads);
  if (!sa.grid.same_as(sb.grid) || cfg_a.t_end != cfg_b.t_end ||
      cfg_a.sample_count != cfg_b.sample_count) {
    throw ConfigError("compare: configs must share grid and sample times");
  }

  const Trajectory ta = run(sa, cfg_a.initial.project(sa.grid));
  const Trajectory tb = run(sb, cfg_b.initial.project(sb.grid));
  const std::vector<double> q = uniqueness_distance(ta, tb, theta);

  const double norm_a = trajectory_norm(ta, cfg_a.sigma1, cfg_a.sigma2);
  const double norm_b = trajectory_norm(tb, cfg_a.sigma1, cfg_a.sigma2);
  const double eta_theta = cfg_a.B.eta(theta);
  const double psi = gronwall_constant_psi(norm_a, norm_b, cfg_a.K.k1,
                                           cfg_a.K.mu, cfg_a.C.k2, eta_theta);
  const ContractionReport contraction = contraction_check(ta.times, q, psi);

  fs::create_directories(out_dir);
  write_file(out_dir + "/q_distance.csv",
             contraction_csv(ta.times, q, contraction.bounds));
  ordered_json summary{
      {"theta", theta},
      {"psi", psi},
      {"norm_g", norm_a},
      {"norm_h", norm_b},
      {"contraction_pass", contraction.pass}};
  if (contraction.first_violation_time) {
    summary["first_violation_time"] = *contraction.first_violation_time;
  }
  write_file(out_dir + "/compare_summary.json", summary.dump(2) + "\n");
  std::cout << (contraction.pass ? "contraction PASS" : "contraction FAIL")
            << "  psi=" << format_number(psi) << "\n";
  return 0;
}

int cmd_convergence(const std::string& config_path,
                    const std::vector<unsigned>& n_list,
                    const std::string& out_dir, unsigned threads) {
  const RunConfig cfg = load_run_config(config_path);
  const SolverConfig solver = make_solver_config(cfg, threads);
  const auto rows = truncation_convergence(
      solver, cfg.initial.project(solver.grid), n_list, cfg.theta);

  fs::create_directories(out_dir);
  std::string csv = "n_lo,n_hi,sup_Q\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.n_lo) + "," + std::to_string(r.n_hi) + "," +
           format_number(r.sup_Q) + "\n";
  }
  write_file(out_dir + "/convergence.csv", csv);
  for (const auto& r : rows) {
    std::cout << "n " << r.n_lo << " vs " << r.n_hi
              << ": sup_Q = " << format_number(r.sup_Q) << "\n";
  }
  return 0;
}

int cmd_envelopes(const std::string& config_path) {
  const RunConfig cfg = load_run_config(config_path);
  const MassGrid grid = build_geometric_grid(cfg.x_min, cfg.x_max, cfg.n_cells);
  const EnvelopeSummary s = envelope_summary(cfg, grid, cfg.initial.project(grid));
  std::cout << "P1            = " << format_number(s.P1) << "\n"
            << "P0(T)         = " << format_number(s.P0) << "\n"
            << "P2(T)         = " << format_number(s.P2) << "\n"
            << "P_-omega(T)   = " << format_number(s.Pneg) << "\n"
            << "E(0)          = " << format_number(s.E0) << "\n"
            << "S(T) printed  = " << format_number(s.S_paper) << "\n"
            << "S(T) sup E    = " << format_number(s.S_from_E) << "\n";
  if (s.sup_forms_disagree) {
    std::cout << "note: the two printed sup-bound forms disagree; both are "
                 "reported\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coagulation + collision-induced fragmentation solver"};
  app.require_subcommand(1);

  std::string config_path, config_b, out_dir = "out";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  double theta = 0.0;
  std::vector<unsigned> n_list;

  auto* run_cmd = app.add_subcommand("run", "integrate a configuration");
  run_cmd->add_option("--config", config_path, "config path")->required();
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--threads", threads, "worker threads (output invariant)");

  auto* check_cmd =
      app.add_subcommand("check-kernels", "assumption admissibility report");
  check_cmd->add_option("--config", config_path, "config path")->required();

  auto* compare_cmd =
      app.add_subcommand("compare", "Q(t) distance between two runs");
  compare_cmd->add_option("config_a", config_path, "first config")->required();
  compare_cmd->add_option("config_b", config_b, "second config")->required();
  auto* theta_opt = compare_cmd->add_option("--theta", theta, "Q weight exponent");
  compare_cmd->add_option("--out", out_dir, "output directory");
  compare_cmd->add_option("--threads", threads, "worker threads");

  auto* conv_cmd =
      app.add_subcommand("convergence", "truncation-index study");
  conv_cmd->add_option("--config", config_path, "config path")->required();
  conv_cmd->add_option("--n-list", n_list, "truncation indices")->required();
  conv_cmd->add_option("--out", out_dir, "output directory");
  conv_cmd->add_option("--threads", threads, "worker threads");

  auto* env_cmd = app.add_subcommand("envelopes", "print Gronwall envelopes");
  env_cmd->add_option("--config", config_path, "config path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, out_dir, threads);
    if (check_cmd->parsed()) return cmd_check_kernels(config_path);
    if (compare_cmd->parsed()) {
      return cmd_compare(config_path, config_b, theta, theta_opt->count() > 0,
                         out_dir, threads);
    }
    if (conv_cmd->parsed()) {
      return cmd_convergence(config_path, n_list, out_dir, threads);
    }
    if (env_cmd->parsed()) return cmd_envelopes(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
