#include "ccfrag/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccfrag/errors.hpp"

namespace ccfrag {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1], positive half.
constexpr int kHalf = 8;
constexpr double kNodes[kHalf] = {
    0.0950125098376374401853, 0.2816035507792589132305,
    0.4580167776572273863424, 0.6178762444026437484467,
    0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr double kWeights[kHalf] = {
    0.1894506104550684962854, 0.1826034150449235888667,
    0.1691565193950025381893, 0.1495959888165767320815,
    0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

}  // namespace

double gauss16(const std::function<double(double)>& f, double a, double b,
               int panels) {
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    double acc = 0.0;
    for (int q = 0; q < kHalf; ++q) {
      acc += kWeights[q] * (f(mid - half * kNodes[q]) + f(mid + half * kNodes[q]));
    }
    total += acc * half;
  }
  return total;
}

MassGrid build_geometric_grid(double x_min, double x_max, std::size_t n_cells) {
  if (!(x_min > 0.0)) throw ConfigError("grid: x_min must be positive");
  if (!(x_max > x_min)) throw ConfigError("grid: x_max must exceed x_min");
  if (n_cells == 0) throw ConfigError("grid: n_cells must be >= 1");

  MassGrid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_cells = n_cells;
  g.ratio = std::pow(x_max / x_min, 1.0 / static_cast<double>(n_cells));
  g.edges.resize(n_cells + 1);
  g.pivots.resize(n_cells);
  g.widths.resize(n_cells);
  const double lmin = std::log(x_min);
  const double lstep = (std::log(x_max) - lmin) / static_cast<double>(n_cells);
  for (std::size_t i = 0; i <= n_cells; ++i) {
    g.edges[i] = std::exp(lmin + lstep * static_cast<double>(i));
  }
  g.edges.front() = x_min;
  g.edges.back() = x_max;
  for (std::size_t i = 0; i < n_cells; ++i) {
    g.pivots[i] = std::sqrt(g.edges[i] * g.edges[i + 1]);
    g.widths[i] = g.edges[i + 1] - g.edges[i];
  }
  return g;
}

std::size_t MassGrid::locate(double x) const {
  if (x < x_min || x > x_max) throw ConfigError("locate: mass outside grid");
  const double lr = std::log(ratio);
  auto idx = static_cast<std::ptrdiff_t>(std::floor(std::log(x / x_min) / lr));
  idx = std::clamp<std::ptrdiff_t>(idx, 0,
                                   static_cast<std::ptrdiff_t>(n_cells) - 1);
  // log arithmetic can be off by one at cell boundaries
  while (idx > 0 && x < edges[static_cast<std::size_t>(idx)]) --idx;
  while (idx + 1 < static_cast<std::ptrdiff_t>(n_cells) &&
         x >= edges[static_cast<std::size_t>(idx) + 1])
    ++idx;
  return static_cast<std::size_t>(idx);
}

bool MassGrid::same_as(const MassGrid& other) const {
  return n_cells == other.n_cells && edges == other.edges;
}

std::vector<double> project_initial_condition(
    const MassGrid& grid, const std::function<double(double)>& g0) {
  std::vector<double> density(grid.n_cells, 0.0);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    auto checked = [&](double x) {
      const double v = g0(x);
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError("initial condition negative or non-finite at x=" +
                         std::to_string(x));
      }
      return v;
    };
    density[i] = gauss16(checked, grid.edges[i], grid.edges[i + 1]) / grid.widths[i];
  }
  return density;
}

}  // namespace ccfrag
