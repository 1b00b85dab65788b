#include "ccfrag/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ccfrag/errors.hpp"
#include "ccfrag/grid.hpp"

namespace ccfrag {

using ordered_json = nlohmann::ordered_json;

namespace {

const ordered_json& field(const ordered_json& j, const char* name,
                          const char* block) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw ConfigError(std::string("config: missing field '") + block + "." +
                      name + "'");
  }
  return *it;
}

template <typename T>
T get_or(const ordered_json& j, const char* name, T fallback) {
  auto it = j.find(name);
  return it == j.end() ? fallback : it->get<T>();
}

CoagFamily parse_coag_family(const std::string& s) {
  if (s == "constant") return CoagFamily::kConstant;
  if (s == "brownian_continuum") return CoagFamily::kBrownianContinuum;
  if (s == "brownian_free_molecular") return CoagFamily::kBrownianFreeMolecular;
  if (s == "granulation") return CoagFamily::kGranulation;
  if (s == "custom") return CoagFamily::kCustom;
  throw ConfigError("config: unknown coagulation family '" + s + "'");
}

std::string coag_family_name(CoagFamily f) {
  switch (f) {
    case CoagFamily::kConstant: return "constant";
    case CoagFamily::kBrownianContinuum: return "brownian_continuum";
    case CoagFamily::kBrownianFreeMolecular: return "brownian_free_molecular";
    case CoagFamily::kGranulation: return "granulation";
    case CoagFamily::kCustom: return "custom";
  }
  return "constant";
}

CollisionFamily parse_coll_family(const std::string& s) {
  if (s == "zero") return CollisionFamily::kZero;
  if (s == "constant") return CollisionFamily::kConstant;
  if (s == "product_bounded") return CollisionFamily::kProductBounded;
  if (s == "custom") return CollisionFamily::kCustom;
  throw ConfigError("config: unknown collision family '" + s + "'");
}

std::string coll_family_name(CollisionFamily f) {
  switch (f) {
    case CollisionFamily::kZero: return "zero";
    case CollisionFamily::kConstant: return "constant";
    case CollisionFamily::kProductBounded: return "product_bounded";
    case CollisionFamily::kCustom: return "custom";
  }
  return "zero";
}

LogLatticeTable parse_table(const ordered_json& j, const char* block) {
  LogLatticeTable t;
  t.x = field(j, "x", block).get<std::vector<double>>();
  t.y = field(j, "y", block).get<std::vector<double>>();
  t.v = field(j, "values", block).get<std::vector<double>>();
  if (!t.valid()) {
    throw ConfigError(std::string("config: invalid kernel table in '") + block +
                      "'");
  }
  return t;
}

ordered_json table_json(const LogLatticeTable& t) {
  return ordered_json{{"x", t.x}, {"y", t.y}, {"values", t.v}};
}

}  // namespace

std::vector<double> InitialCondition::project(const MassGrid& grid) const {
  if (type == "zero") {
    return std::vector<double>(grid.n_cells, 0.0);
  }
  if (type == "monodisperse") {
    std::vector<double> g(grid.n_cells, 0.0);
    const std::size_t i = grid.locate(center);
    g[i] = amplitude / grid.widths[i];
    return g;
  }
  std::function<double(double)> f;
  if (type == "constant") {
    f = [a = amplitude](double) { return a; };
  } else if (type == "exponential") {
    f = [a = amplitude, s = scale](double x) { return a * std::exp(-x / s); };
  } else if (type == "gaussian") {
    f = [a = amplitude, c = center, w = width](double x) {
      const double u = (x - c) / w;
      return a * std::exp(-u * u);
    };
  } else {
    throw ConfigError("config: unknown initial condition type '" + type + "'");
  }
  return project_initial_condition(grid, f);
}

RunConfig parse_run_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }

  RunConfig c;
  const auto& grid = field(j, "grid", "");
  c.x_min = field(grid, "x_min", "grid").get<double>();
  c.x_max = field(grid, "x_max", "grid").get<double>();
  c.n_cells = field(grid, "n_cells", "grid").get<std::size_t>();

  const auto& kernels = field(j, "kernels", "");
  const auto& K = field(kernels, "K", "kernels");
  c.K.family = parse_coag_family(field(K, "family", "kernels.K").get<std::string>());
  c.K.k = get_or(K, "k", 1.0);
  c.K.a = get_or(K, "a", 0.0);
  c.K.b = get_or(K, "b", 0.0);
  if (c.K.family == CoagFamily::kGranulation &&
      !(c.K.a - c.K.b >= 0.0 && c.K.a - c.K.b <= 1.0 && c.K.b >= 0.0 &&
        c.K.b < 1.0)) {
    throw ConfigError("config: granulation kernel needs a-b in [0,1], b in [0,1)");
  }
  if (auto it = K.find("bound"); it != K.end()) {
    c.K.k1 = field(*it, "k1", "kernels.K.bound").get<double>();
    c.K.mu = field(*it, "mu", "kernels.K.bound").get<double>();
    c.K.sigma = field(*it, "sigma", "kernels.K.bound").get<double>();
  }
  if (c.K.family == CoagFamily::kCustom) {
    c.K.table = parse_table(field(K, "table", "kernels.K"), "kernels.K.table");
  }

  const auto& C = field(kernels, "C", "kernels");
  c.C.family = parse_coll_family(field(C, "family", "kernels.C").get<std::string>());
  c.C.k2 = get_or(C, "k2", 0.0);
  c.C.alpha = get_or(C, "alpha", 0.0);
  if (c.C.family == CollisionFamily::kCustom) {
    c.C.table = parse_table(field(C, "table", "kernels.C"), "kernels.C.table");
  }

  const auto& B = field(kernels, "B", "kernels");
  const auto bfam = field(B, "family", "kernels.B").get<std::string>();
  if (bfam == "power_law") {
    c.B.family = BreakupFamily::kPowerLaw;
    c.B.nu = field(B, "nu", "kernels.B").get<double>();
    if (!(c.B.nu > -1.0 && c.B.nu <= 0.0)) {
      throw ConfigError("config: breakup exponent nu must lie in (-1, 0]");
    }
    c.B.B_tilde = get_or(B, "B_tilde", c.B.nu + 2.0);
  } else if (bfam == "custom") {
    c.B.family = BreakupFamily::kCustom;
    c.B.B_tilde = field(B, "B_tilde", "kernels.B").get<double>();
    c.B.table = parse_table(field(B, "table", "kernels.B"), "kernels.B.table");
  } else {
    throw ConfigError("config: unknown breakup family '" + bfam + "'");
  }

  c.truncation_n = field(j, "truncation_n", "").get<unsigned>();
  if (c.truncation_n == 0) throw ConfigError("config: truncation_n must be >= 1");

  const auto& time = field(j, "time", "");
  c.t_end = field(time, "t_end", "time").get<double>();
  c.dt_init = get_or(time, "dt_init", 1e-4);
  c.dt_safety = get_or(time, "dt_safety", 1e-6);
  if (!(c.dt_safety > 0.0 && c.dt_safety <= 1.0)) {
    throw ConfigError("config: time.dt_safety must lie in (0, 1]");
  }
  c.sample_count = get_or<std::size_t>(time, "sample_count", 11);
  c.max_steps = get_or<std::uint64_t>(time, "max_steps", 50'000'000);
  c.positivity = get_or<std::string>(time, "positivity", "clip_and_report");
  if (c.positivity != "clip_and_report" && c.positivity != "reject_step") {
    throw ConfigError("config: time.positivity must be clip_and_report or reject_step");
  }

  const auto& init = field(j, "initial", "");
  c.initial.type = field(init, "type", "initial").get<std::string>();
  c.initial.amplitude = get_or(init, "amplitude", 1.0);
  c.initial.scale = get_or(init, "scale", 1.0);
  c.initial.center = get_or(init, "center", 1.0);
  c.initial.width = get_or(init, "width", 0.1);

  if (auto it = j.find("moments"); it != j.end()) {
    c.extra_xi = get_or(*it, "xi", std::vector<double>{});
    c.omega = get_or(*it, "omega", 0.5);
  }
  if (auto it = j.find("analysis"); it != j.end()) {
    c.theta = get_or(*it, "theta", 0.5);
    c.sigma1 = get_or(*it, "sigma1", 2.0);
    c.sigma2 = get_or(*it, "sigma2", 0.9);
    c.mass_tolerance = get_or(*it, "mass_tolerance", 1e-6);
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string serialize_run_config(const RunConfig& c) {
  ordered_json j;
  j["grid"] = {{"x_min", c.x_min}, {"x_max", c.x_max}, {"n_cells", c.n_cells}};

  ordered_json K{{"family", coag_family_name(c.K.family)},
                 {"k", c.K.k},
                 {"a", c.K.a},
                 {"b", c.K.b},
                 {"bound",
                  {{"k1", c.K.k1}, {"mu", c.K.mu}, {"sigma", c.K.sigma}}}};
  if (c.K.table) K["table"] = table_json(*c.K.table);

  ordered_json C{{"family", coll_family_name(c.C.family)},
                 {"k2", c.C.k2},
                 {"alpha", c.C.alpha}};
  if (c.C.table) C["table"] = table_json(*c.C.table);

  ordered_json B;
  if (c.B.family == BreakupFamily::kPowerLaw) {
    B = {{"family", "power_law"}, {"nu", c.B.nu}, {"B_tilde", c.B.B_tilde}};
  } else {
    B = {{"family", "custom"}, {"B_tilde", c.B.B_tilde},
         {"table", table_json(*c.B.table)}};
  }
  j["kernels"] = {{"K", K}, {"C", C}, {"B", B}};
  j["truncation_n"] = c.truncation_n;
  j["time"] = {{"t_end", c.t_end},
               {"dt_init", c.dt_init},
               {"dt_safety", c.dt_safety},
               {"sample_count", c.sample_count},
               {"max_steps", c.max_steps},
               {"positivity", c.positivity}};
  j["initial"] = {{"type", c.initial.type},
                  {"amplitude", c.initial.amplitude},
                  {"scale", c.initial.scale},
                  {"center", c.initial.center},
                  {"width", c.initial.width}};
  j["moments"] = {{"xi", c.extra_xi}, {"omega", c.omega}};
  j["analysis"] = {{"theta", c.theta},
                   {"sigma1", c.sigma1},
                   {"sigma2", c.sigma2},
                   {"mass_tolerance", c.mass_tolerance}};
  return j.dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig& config) {
  const std::string text = serialize_run_config(config);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

SolverConfig make_solver_config(const RunConfig& c, unsigned n_threads) {
  SolverConfig s;
  s.grid = build_geometric_grid(c.x_min, c.x_max, c.n_cells);
  s.kernels = truncate(c.K, c.C, c.truncation_n);
  s.breakup = c.B;
  s.t_end = c.t_end;
  s.dt_init = c.dt_init;
  s.dt_tol = c.dt_safety;
  s.positivity = c.positivity == "reject_step" ? PositivityMode::kRejectStep
                                               : PositivityMode::kClipAndReport;
  s.max_steps = c.max_steps;
  s.sample_count = c.sample_count;
  s.n_threads = n_threads;
  return s;
}

}  // namespace ccfrag
