#ifndef CCFRAG_KERNELS_HPP_
#define CCFRAG_KERNELS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ccfrag {

/// Tabulated kernel values on a log-spaced lattice, bilinear in log-mass.
/// Values are clamped to the lattice hull outside it.
struct LogLatticeTable {
  std::vector<double> x;  // strictly increasing, positive
  std::vector<double> y;
  std::vector<double> v;  // row-major, size x.size()*y.size()

  double eval(double px, double py) const;
  bool valid() const;
};

enum class CoagFamily : std::uint8_t {
  kConstant,
  kBrownianContinuum,
  kBrownianFreeMolecular,
  kGranulation,
  kCustom,
};

enum class CollisionFamily : std::uint8_t {
  kZero,
  kConstant,
  kProductBounded,
  kCustom,
};

enum class BreakupFamily : std::uint8_t {
  kPowerLaw,
  kCustom,
};

/// Coagulation rate K(x, y) plus the declared constants (k1, mu, sigma) of
/// the singular growth bound K <= k1 (1+x+y)^mu / (xy)^sigma.
struct CoagulationKernel {
  CoagFamily family = CoagFamily::kConstant;
  double k = 1.0;  // rate prefactor
  double a = 0.0;  // granulation numerator exponent
  double b = 0.0;  // granulation denominator exponent
  double k1 = 1.0;
  double mu = 0.0;
  double sigma = 0.0;
  std::optional<LogLatticeTable> table;

  double operator()(double x, double y) const;
};

/// Collision rate C(x, y) with the declared bilinear-growth constants (k2,
/// alpha): C <= k2 (1+x)^alpha (1+y)^alpha.
struct CollisionKernel {
  CollisionFamily family = CollisionFamily::kZero;
  double k2 = 0.0;
  double alpha = 0.0;
  std::optional<LogLatticeTable> table;

  double operator()(double x, double y) const;
};

/// Daughter distribution B(x|y;z). The power-law family
/// B = ((nu+2)/y)(x/y)^nu, nu in (-1, 0], ignores the colliding mass z; the
/// custom family accepts z but the tabulated form is z-independent too.
struct BreakupKernel {
  BreakupFamily family = BreakupFamily::kPowerLaw;
  double nu = 0.0;
  double B_tilde = 2.0;  // pointwise bound x*B <= B_tilde
  std::optional<LogLatticeTable> table;  // tabulated in (x, y)

  double operator()(double x, double y, double z) const;

  /// Integral of x^p B(x|y;z) over (0, y). Closed form for the power-law
  /// family, adaptive quadrature (rel. 1e-10) for custom tables.
  double moment(double y, double z, double p) const;

  /// Total fragment count N(y); constant (nu+2)/(nu+1) for power law.
  double fragment_count(double y) const;
  /// sup_y N(y).
  double fragment_sup() const;
  /// Closed-form eta(omega) = (nu+2)/(nu+1-omega) for power law.
  double eta(double omega) const;
  /// Closed-form omega_p = (nu+2)/(nu+p+1) for power law.
  double omega_p(double p) const;
};

/// Sharp-cutoff truncation: the base kernels inside the closed square
/// [1/n, n)^2, zero outside.
struct TruncatedKernelPair {
  CoagulationKernel base_K;
  CollisionKernel base_C;
  unsigned n = 1;

  double eval_K(double x, double y) const;
  double eval_C(double x, double y) const;
};

TruncatedKernelPair truncate(const CoagulationKernel& K,
                             const CollisionKernel& C, unsigned n);

/// Where the admissibility inequalities are sampled: log lattices over
/// (0,1)^2 and [1, x_max]^2 plus the diagonal, and the exponent sets used
/// for the fragment-moment bounds.
struct SamplePlan {
  double x_max = 100.0;
  int points_per_decade = 6;
  std::vector<double> p_list = {1.5, 2.0, 3.0};
  std::vector<double> omega_list = {0.0, 0.25, 0.5};
  std::vector<double> y_list = {1e-2, 1.0, 1e2};
  // Optional uniqueness-configuration constants for (A1') / (A2').
  std::optional<double> theta;
  std::optional<double> sigma1;
  std::optional<double> sigma2;
};

struct AdmissibilityEntry {
  std::string name;
  bool pass = true;
  double worst_ratio = 0.0;  // >1 marks a violation
  double witness_x = 0.0;
  double witness_y = 0.0;
  std::string note;
};

struct AdmissibilityReport {
  std::vector<AdmissibilityEntry> entries;
  bool all_pass() const;
};

AdmissibilityReport check_admissibility(const CoagulationKernel& K,
                                        const CollisionKernel& C,
                                        const BreakupKernel& B,
                                        const SamplePlan& plan);

}  // namespace ccfrag

#endif
