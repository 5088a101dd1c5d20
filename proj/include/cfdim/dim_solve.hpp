#pragma once

// Root solving for pressure equations P(theta) = rhs(theta) with an
// increasing right-hand side, and the dimension dispatch for the theorem
// families built on top of it. All roots come back as enclosures from
// certified pressure brackets: a bisection point is classified only when
// its bracket clears the rhs strictly.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfdim/pressure.hpp"
#include "cfdim/seq_profile.hpp"

namespace cfdim {

// rhs(theta) = slope * theta + intercept.
struct AffineRhs {
  double slope = 0.0;
  double intercept = 0.0;
  double operator()(double theta) const { return slope * theta + intercept; }
};

// rhs(theta) = (sqrt(theta) + sqrt(2 theta - 1))^2 * logC.
struct HatRhs {
  double logC = 0.0;
  double operator()(double theta) const {
    double r = std::sqrt(theta) + std::sqrt(std::max(0.0, 2.0 * theta - 1.0));
    return r * r * logC;
  }
};

using RhsFn = std::function<double(double)>;

struct SolverOptions {
  double theta_tol = 1e-3;        // target enclosure width
  double pressure_tol_start = 0.02;
  double pressure_tol_min = 1e-4;
  double theta_margin = 2e-3;     // keep away from the 1/2 singularity
  RefineBudget budget;
};

struct DimensionResult {
  double lo = 0.0, hi = 1.0;          // dimension enclosure
  std::string branch;                 // which theorem case produced it
  bool exact = false;                 // closed-form value, zero-width
  bool upper_bound_only = false;      // only dim <= hi is claimed
  bool indeterminate = false;
  bool converged = true;
  std::map<std::string, double> diagnostics;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

DimensionResult exact_value(double v, std::string branch);

// Solve P(theta) = rhs(theta) on (1/2, 1]. rhs must be increasing with
// rhs(1) > 0 so the root is unique and below 1.
DimensionResult solve_pressure_equation(const RhsFn& rhs, std::string branch,
                                        const SolverOptions& opts = {});

// Named solution families.
DimensionResult theta_alpha_beta(double alpha, double beta,
                                 const SolverOptions& opts = {});
// P(theta) = b(2 theta - 1) + c theta.
DimensionResult theta_big(double b, double c, const SolverOptions& opts = {});
// Type I: P(theta) = theta * logB.
DimensionResult theta_log(double logB, const SolverOptions& opts = {});
// P(theta) = (sqrt(theta)+sqrt(2 theta-1))^2 logC.
DimensionResult theta_hat(double logC, const SolverOptions& opts = {});
// Type III with scale gamma > 0:
// P(theta) = e^g ((e^g+1)/(e^g-1) theta - 1/(e^g-1)) logC.
DimensionResult theta_type_iii(double gamma, double logC,
                               const SolverOptions& opts = {});

// Zero of the digit-restricted pressure: dimension of the bounded-digit
// set F_N. N = 1 gives the empty/singleton degenerate answer 0.
DimensionResult dim_F_N(long long N, double tol = 1e-3);

// Theorem dispatch from growth profiles. Unconverged, non-overridden
// invariants raise DomainError with guidance.
DimensionResult dim_E(const GrowthProfile& gp, const SolverOptions& opts = {});
DimensionResult dim_EL(const GrowthProfile& gp, const SolverOptions& opts = {});

// Limsup families (coefficient growth A(psi) and running-max M(psi) share
// one dispatch on B_psi / b_psi).
enum class LimsupFamily { Coefficient, RunningMax };
DimensionResult dim_limsup_family(const FunctionProfile& fp,
                                  LimsupFamily family = LimsupFamily::Coefficient,
                                  const SolverOptions& opts = {});

// Liminf family for the running maximum; requires the limsup defining
// C_psi to be a genuine limit for the finite branch.
DimensionResult dim_liminf_max(const FunctionProfile& fp,
                               const SolverOptions& opts = {});

// Sum-set family: either a named descriptor or a raw callable routed
// through classify_sum_function.
struct SumFamilySpec {
  enum class Kind {
    ExpPower,    // phi(n) = exp(n^r)
    SqrtPlusR1,  // phi(n) = exp(c sqrt n + r1(n)), r1 increasing, o(sqrt n)
    SqrtPlusR2,  // phi(n) = exp(c sqrt n + r2(n)), block oscillation -> 0
    FloorPower,  // phi(n) = exp(c (floor(d n^{1-r}))^{r/(1-r)} / d^{r/(1-r)})
    FloorExp,    // phi(n) = exp(c exp(gamma floor(log n / gamma)))
    Raw
  } kind = Kind::Raw;
  double r = 0.0, c = 0.0, d = 0.0, gamma = 0.0;
  LogSeq log_phi;  // for Raw
};

DimensionResult dim_sum_family(const SumFamilySpec& spec,
                               const SolverOptions& opts = {});

// Finite-horizon liminf of
//   sum_{k<=n} log v_k / (2 sum_{k<=n+1} log u_k - log v_{n+1})
// with running-minimum diagnostics and an extrapolated limit estimate.
struct LiaoRamsResult {
  std::vector<double> trace;
  double running_min = 0.0;
  double value = 0.0;     // extrapolated limit of the trace
  bool extrapolated = false;
  bool ratio_warning = false;  // v_n/u_n appears unbounded
};

LiaoRamsResult dim_liao_rams(const LogSeq& log_u, const LogSeq& log_v,
                             int horizon = 50);

}  // namespace cfdim
