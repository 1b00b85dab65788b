#include "ccfrag/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ccfrag/errors.hpp"
#include "ccfrag/grid.hpp"

namespace ccfrag {

namespace {

void require_positive_masses(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw std::domain_error("kernel evaluated at non-positive mass");
  }
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double scale = std::max(std::abs(whole), 1e-300);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, rel_tol * scale, 48);
}

}  // namespace

bool LogLatticeTable::valid() const {
  if (x.size() < 2 || y.size() < 2 || v.size() != x.size() * y.size())
    return false;
  auto increasing_positive = [](const std::vector<double>& a) {
    if (a.front() <= 0.0) return false;
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i] <= a[i - 1]) return false;
    return true;
  };
  return increasing_positive(x) && increasing_positive(y);
}

double LogLatticeTable::eval(double px, double py) const {
  auto bracket = [](const std::vector<double>& a, double p, std::size_t& i,
                    double& frac) {
    p = std::clamp(p, a.front(), a.back());
    auto it = std::upper_bound(a.begin(), a.end(), p);
    i = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(it - a.begin() - 1, 0,
                                   static_cast<std::ptrdiff_t>(a.size()) - 2));
    frac = (std::log(p) - std::log(a[i])) / (std::log(a[i + 1]) - std::log(a[i]));
  };
  std::size_t ix, iy;
  double fx, fy;
  bracket(x, px, ix, fx);
  bracket(y, py, iy, fy);
  const std::size_t ny = y.size();
  const double v00 = v[ix * ny + iy];
  const double v01 = v[ix * ny + iy + 1];
  const double v10 = v[(ix + 1) * ny + iy];
  const double v11 = v[(ix + 1) * ny + iy + 1];
  return (1.0 - fx) * ((1.0 - fy) * v00 + fy * v01) +
         fx * ((1.0 - fy) * v10 + fy * v11);
}

double CoagulationKernel::operator()(double x, double y) const {
  require_positive_masses(x, y);
  switch (family) {
    case CoagFamily::kConstant:
      return k;
    case CoagFamily::kBrownianContinuum:
      return k * (std::cbrt(x) + std::cbrt(y)) *
             (1.0 / std::cbrt(x) + 1.0 / std::cbrt(y));
    case CoagFamily::kBrownianFreeMolecular: {
      const double s = std::cbrt(x) + std::cbrt(y);
      return k * s * s * std::sqrt(1.0 / x + 1.0 / y);
    }
    case CoagFamily::kGranulation:
      return k * std::pow(x + y, a) / std::pow(x * y, b);
    case CoagFamily::kCustom:
      if (!table) throw ConfigError("custom coagulation kernel without table");
      return table->eval(x, y);
  }
  return 0.0;
}

double CollisionKernel::operator()(double x, double y) const {
  require_positive_masses(x, y);
  switch (family) {
    case CollisionFamily::kZero:
      return 0.0;
    case CollisionFamily::kConstant:
      return k2;
    case CollisionFamily::kProductBounded:
      return k2 * std::pow(1.0 + x, alpha) * std::pow(1.0 + y, alpha);
    case CollisionFamily::kCustom:
      if (!table) throw ConfigError("custom collision kernel without table");
      return table->eval(x, y);
  }
  return 0.0;
}

double BreakupKernel::operator()(double x, double y, double z) const {
  if (!(y > 0.0) || !(z > 0.0)) {
    throw std::domain_error("breakup kernel: parent masses must be positive");
  }
  if (!(x > 0.0)) {
    throw std::domain_error("breakup kernel: fragment mass must be positive");
  }
  if (x >= y) return 0.0;  // no fragment heavier than the parent
  switch (family) {
    case BreakupFamily::kPowerLaw:
      return (nu + 2.0) / y * std::pow(x / y, nu);
    case BreakupFamily::kCustom:
      if (!table) throw ConfigError("custom breakup kernel without table");
      return table->eval(x, y);
  }
  return 0.0;
}

double BreakupKernel::moment(double y, double z, double p) const {
  if (!(y > 0.0)) throw std::domain_error("breakup moment: y must be positive");
  if (family == BreakupFamily::kPowerLaw) {
    if (!(p > -(nu + 1.0))) {
      throw std::domain_error("breakup moment: exponent not integrable");
    }
    return (nu + 2.0) / (nu + p + 1.0) * std::pow(y, p);
  }
  if (!table) throw ConfigError("custom breakup kernel without table");
  const double lo = std::min(table->x.front(), y);
  auto f = [&](double x) { return std::pow(x, p) * (*this)(x, y, z); };
  return integrate_adaptive(f, lo, y, 1e-10);
}

double BreakupKernel::fragment_count(double y) const {
  return moment(y, 1.0, 0.0);
}

double BreakupKernel::fragment_sup() const {
  if (family == BreakupFamily::kPowerLaw) return (nu + 2.0) / (nu + 1.0);
  double sup = 0.0;
  for (double y : table->y) sup = std::max(sup, fragment_count(y));
  return sup;
}

double BreakupKernel::eta(double omega) const {
  if (family == BreakupFamily::kPowerLaw) {
    if (!(omega < nu + 1.0)) {
      throw std::domain_error("eta(omega): negative moment not integrable");
    }
    return (nu + 2.0) / (nu + 1.0 - omega);
  }
  double sup = 0.0;
  for (double y : table->y)
    sup = std::max(sup, moment(y, 1.0, -omega) * std::pow(y, omega));
  return sup;
}

double BreakupKernel::omega_p(double p) const {
  if (family == BreakupFamily::kPowerLaw) return (nu + 2.0) / (nu + p + 1.0);
  double sup = 0.0;
  for (double y : table->y)
    sup = std::max(sup, moment(y, 1.0, p) * std::pow(y, -p));
  return sup;
}

TruncatedKernelPair truncate(const CoagulationKernel& K,
                             const CollisionKernel& C, unsigned n) {
  if (n == 0) throw ConfigError("truncation index must be >= 1");
  return TruncatedKernelPair{K, C, n};
}

double TruncatedKernelPair::eval_K(double x, double y) const {
  const double lo = 1.0 / static_cast<double>(n);
  const double hi = static_cast<double>(n);
  if (x < lo || y < lo || x >= hi || y >= hi) return 0.0;
  return base_K(x, y);
}

double TruncatedKernelPair::eval_C(double x, double y) const {
  const double lo = 1.0 / static_cast<double>(n);
  const double hi = static_cast<double>(n);
  if (x < lo || y < lo || x >= hi || y >= hi) return 0.0;
  return base_C(x, y);
}

bool AdmissibilityReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const AdmissibilityEntry& e) { return e.pass; });
}

namespace {

std::vector<double> log_samples(double lo, double hi, int per_decade) {
  std::vector<double> out;
  const double llo = std::log10(lo), lhi = std::log10(hi);
  const int count = std::max(2, static_cast<int>((lhi - llo) * per_decade) + 1);
  for (int i = 0; i < count; ++i) {
    out.push_back(std::pow(10.0, llo + (lhi - llo) * i / (count - 1)));
  }
  return out;
}

// Worst ratio of value(x,y)/bound(x,y) over the lattice of a region pair.
template <typename F, typename G>
AdmissibilityEntry ratio_check(const std::string& name,
                               const std::vector<double>& xs,
                               const std::vector<double>& ys, F&& value,
                               G&& bound) {
  AdmissibilityEntry e{name, true, 0.0, 0.0, 0.0, ""};
  const double tol = 1.0 + 1e-9;
  for (double x : xs) {
    for (double y : ys) {
      const double b = bound(x, y);
      const double r = b > 0.0 ? value(x, y) / b : (value(x, y) > 0.0 ? 1e300 : 0.0);
      if (r > e.worst_ratio) {
        e.worst_ratio = r;
        e.witness_x = x;
        e.witness_y = y;
      }
    }
  }
  e.pass = e.worst_ratio <= tol;
  return e;
}

}  // namespace

AdmissibilityReport check_admissibility(const CoagulationKernel& K,
                                        const CollisionKernel& C,
                                        const BreakupKernel& B,
                                        const SamplePlan& plan) {
  AdmissibilityReport report;
  auto lower = log_samples(1e-4, 1.0 - 1e-9, plan.points_per_decade);
  auto upper = log_samples(1.0, plan.x_max, plan.points_per_decade);
  std::vector<double> all = lower;
  all.insert(all.end(), upper.begin(), upper.end());

  // (A0): nonnegativity and symmetry on the sample set.
  {
    AdmissibilityEntry e{"A0_nonnegative_symmetric", true, 0.0, 0.0, 0.0, ""};
    for (double x : all) {
      for (double y : all) {
        const double kx = K(x, y);
        const double cx = C(x, y);
        if (kx < 0.0 || cx < 0.0 || kx != K(y, x) || cx != C(y, x)) {
          e.pass = false;
          e.witness_x = x;
          e.witness_y = y;
          e.note = "negative or asymmetric value";
        }
      }
    }
    report.entries.push_back(e);
  }

  // (A1): K <= k1 (1+x+y)^mu / (xy)^sigma.
  report.entries.push_back(ratio_check(
      "A1_coagulation_growth", all, all,
      [&](double x, double y) { return K(x, y); },
      [&](double x, double y) {
        return K.k1 * std::pow(1.0 + x + y, K.mu) / std::pow(x * y, K.sigma);
      }));
  {
    AdmissibilityEntry e{"A1_exponents", true, 0.0, 0.0, 0.0, ""};
    e.pass = K.sigma >= 0.0 && K.sigma < 1.0 && K.mu - K.sigma >= 0.0 &&
             K.mu - K.sigma <= 1.0;
    if (!e.pass) e.note = "need sigma in [0,1) and mu-sigma in [0,1]";
    report.entries.push_back(e);
  }

  // (A2): C <= k2 (1+x)^alpha (1+y)^alpha.
  report.entries.push_back(ratio_check(
      "A2_collision_growth", all, all,
      [&](double x, double y) { return C(x, y); },
      [&](double x, double y) {
        return C.k2 * std::pow(1.0 + x, C.alpha) * std::pow(1.0 + y, C.alpha);
      }));

  // (A2) unit square: K >= 2(N-1)C on (0,1)^2. N is the fragment sup.
  {
    const double N = B.fragment_sup();
    AdmissibilityEntry e = ratio_check(
        "A2_unit_square", lower, lower,
        [&](double x, double y) { return 2.0 * (N - 1.0) * C(x, y); },
        [&](double x, double y) { return K(x, y); });
    if (B.family == BreakupFamily::kCustom) {
      // N(y) may vary with y for tabulated kernels; flag that sup is used.
      double lo = 1e300, hi = 0.0;
      for (double y : B.table->y) {
        const double n = B.fragment_count(y);
        lo = std::min(lo, n);
        hi = std::max(hi, n);
      }
      if (hi - lo > 1e-8 * hi) e.note = "N(y) non-constant; using sup N(y)";
    }
    report.entries.push_back(e);
  }

  // (A3): x B(x|y;z) <= B_tilde for x in (0, y).
  {
    AdmissibilityEntry e{"A3_pointwise_bound", true, 0.0, 0.0, 0.0, ""};
    for (double y : plan.y_list) {
      for (double f : log_samples(1e-6, 1.0 - 1e-9, plan.points_per_decade)) {
        const double x = f * y;
        const double r = x * B(x, y, 1.0) / B.B_tilde;
        if (r > e.worst_ratio) {
          e.worst_ratio = r;
          e.witness_x = x;
          e.witness_y = y;
        }
      }
    }
    e.pass = e.worst_ratio <= 1.0 + 1e-9;
    report.entries.push_back(e);
  }

  // Eq. (1.3): first fragment moment returns the parent mass.
  {
    AdmissibilityEntry e{"mass_conservation_fragmentation", true, 0.0, 0.0, 0.0, ""};
    for (double y : plan.y_list) {
      const double r = std::abs(B.moment(y, 1.0, 1.0) / y - 1.0);
      if (r > e.worst_ratio) {
        e.worst_ratio = r;
        e.witness_y = y;
      }
    }
    e.pass = e.worst_ratio <= 1e-9;
    report.entries.push_back(e);
  }

  // (A4): omega_p < 1 for p > 1.
  for (double p : plan.p_list) {
    AdmissibilityEntry e{"A4_p=" + std::to_string(p), true, 0.0, 0.0, 0.0, ""};
    for (double y : plan.y_list) {
      const double r = B.moment(y, 1.0, p) / std::pow(y, p);
      if (r > e.worst_ratio) {
        e.worst_ratio = r;
        e.witness_y = y;
      }
    }
    e.pass = e.worst_ratio < 1.0;
    if (!e.pass) e.note = "fragment moment ratio not < 1";
    report.entries.push_back(e);
  }

  // (A5): finite eta(omega) with eta > 1 for the planned omegas.
  for (double omega : plan.omega_list) {
    AdmissibilityEntry e{"A5_omega=" + std::to_string(omega), true, 0.0, 0.0,
                         0.0, ""};
    try {
      double sup = 0.0;
      for (double y : plan.y_list) {
        sup = std::max(sup, B.moment(y, 1.0, -omega) * std::pow(y, omega));
      }
      e.worst_ratio = sup;
      e.pass = std::isfinite(sup) && sup > 1.0;
      if (!e.pass) e.note = "eta(omega) must be finite and > 1";
    } catch (const std::domain_error&) {
      e.pass = false;
      e.note = "negative fragment moment not integrable";
    }
    report.entries.push_back(e);
  }

  // (A1') / (A2') when the uniqueness configuration is supplied.
  if (plan.theta && plan.sigma1 && plan.sigma2) {
    AdmissibilityEntry e1{"A1p_weight_compatibility", true, 0.0, 0.0, 0.0, ""};
    e1.pass = K.sigma + *plan.theta <= *plan.sigma2 + 1e-12 &&
              K.sigma <= *plan.theta + 1e-12;
    if (!e1.pass) e1.note = "need sigma+theta <= sigma2 and sigma <= theta";
    report.entries.push_back(e1);

    AdmissibilityEntry e2{"A2p_weight_compatibility", true, 0.0, 0.0, 0.0, ""};
    e2.pass = C.alpha + 1.0 <= *plan.sigma1 + 1e-12;
    if (!e2.pass) e2.note = "need alpha+1 <= sigma1";
    report.entries.push_back(e2);
  }

  return report;
}

}  // namespace ccfrag
