#include "cfdim/dim_solve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfdim/cf_core.hpp"
#include "cfdim/numerics.hpp"

namespace cfdim {

namespace {

// Certified pressure bracket at theta with target width ptol. Abstracted so
// the same bisection drives both the unrestricted pressure and the
// digit-restricted one.
using BracketProvider =
    std::function<PressureBracket(double theta, double ptol)>;

// +1: P(theta) certifiably above rhs (root to the right).
// -1: certifiably below (root to the left).
//  0: bracket straddles rhs even at the finest tolerance.
int classify_point(const BracketProvider& pf, const RhsFn& rhs, double theta,
                   double& ptol, const SolverOptions& o) {
  double r = rhs(theta);
  for (;;) {
    PressureBracket br = pf(theta, ptol);
    if (br.lower > r) return +1;
    if (br.upper < r) return -1;
    if (ptol <= o.pressure_tol_min * 1.0001) return 0;
    ptol = std::max(ptol * 0.25, o.pressure_tol_min);
  }
}

// Bisection on the dyadic lattice over [1/2, 1]. Caller guarantees
// f = P - rhs is positive at the left endpoint and negative at the right
// one, so neither endpoint is ever evaluated; midpoints land on dyadic
// rationals shared (via the pressure memo) across repeated solves.
DimensionResult bisect_root(const BracketProvider& pf, const RhsFn& rhs,
                            std::string branch, const SolverOptions& o) {
  DimensionResult res;
  res.branch = std::move(branch);
  double a = 0.5, b = 1.0;
  double ptol = o.pressure_tol_start;
  int steps = 0;
  bool ambiguous = false;
  while (b - a > o.theta_tol) {
    double m = 0.5 * (a + b);
    if (m < 0.5 + o.theta_margin) {
      // The pressure blows up at 1/2; a cheap restricted lower bound
      // settles points this close to the singularity.
      PressureBracket lb = pressure_restricted(m, 64, 256);
      if (lb.lower > rhs(m)) {
        a = m;
        ++steps;
        continue;
      }
    }
    int side = classify_point(pf, rhs, m, ptol, o);
    ++steps;
    if (side == 0) {
      // The root sits too close to m to classify it. Quarter points are
      // still dyadic and at least (b-a)/4 from the root, so they usually
      // classify; this halves the interval around m.
      double q = 0.25 * (b - a);
      int left = classify_point(pf, rhs, m - q, ptol, o);
      int right = classify_point(pf, rhs, m + q, ptol, o);
      steps += 2;
      if (left == 0 && right == 0) {
        ambiguous = true;
        break;
      }
      if (left > 0) a = m - q;
      if (right < 0) b = m + q;
      if (left < 0) b = m - q;    // root left of the quarter point
      if (right > 0) a = m + q;   // root right of the quarter point
      continue;
    }
    (side > 0 ? a : b) = m;
  }
  res.lo = a;
  res.hi = b;
  res.converged = !ambiguous || (b - a) <= o.theta_tol;
  res.diagnostics["bisection_steps"] = steps;
  res.diagnostics["pressure_tol_final"] = ptol;
  return res;
}

BracketProvider full_pressure_provider(const SolverOptions& o) {
  RefineBudget budget = o.budget;
  return [budget](double theta, double ptol) {
    return pressure_refine(theta, ptol, budget);
  };
}

void require_finite_nonneg(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite and nonnegative");
  }
}

double override_or_value(const LimitEstimate& est, const char* name,
                         const char* hint) {
  if (!est.converged && !est.overridden) {
    std::ostringstream os;
    os << name << " diagnostic did not converge on the horizon; supply an "
       << "analytic override (" << hint << ")";
    throw DomainError(os.str());
  }
  return est.num();
}

}  // namespace

DimensionResult exact_value(double v, std::string branch) {
  DimensionResult res;
  res.lo = res.hi = v;
  res.branch = std::move(branch);
  res.exact = true;
  return res;
}

DimensionResult solve_pressure_equation(const RhsFn& rhs, std::string branch,
                                        const SolverOptions& opts) {
  double r1 = rhs(1.0);
  if (r1 < 0.0) {
    throw DomainError(
        "right-hand side negative at theta = 1; no root in (1/2, 1]");
  }
  if (r1 == 0.0) return exact_value(1.0, std::move(branch));
  return bisect_root(full_pressure_provider(opts), rhs, std::move(branch),
                     opts);
}

DimensionResult theta_alpha_beta(double alpha, double beta,
                                 const SolverOptions& opts) {
  require_finite_nonneg(alpha, "alpha");
  require_finite_nonneg(beta, "beta");
  if (beta > alpha) throw DomainError("beta must not exceed alpha");
  AffineRhs rhs{2.0 * alpha - beta, -(alpha - beta)};
  auto res = solve_pressure_equation(rhs, "theta(alpha,beta)", opts);
  res.diagnostics["alpha"] = alpha;
  res.diagnostics["beta"] = beta;
  return res;
}

DimensionResult theta_big(double b, double c, const SolverOptions& opts) {
  require_finite_nonneg(b, "b");
  require_finite_nonneg(c, "c");
  AffineRhs rhs{2.0 * b + c, -b};
  auto res = solve_pressure_equation(rhs, "Theta(b,c)", opts);
  res.diagnostics["b"] = b;
  res.diagnostics["c"] = c;
  return res;
}

DimensionResult theta_log(double logB, const SolverOptions& opts) {
  require_finite_nonneg(logB, "logB");
  auto res =
      solve_pressure_equation(AffineRhs{logB, 0.0}, "theta(logB)", opts);
  res.diagnostics["logB"] = logB;
  return res;
}

DimensionResult theta_hat(double logC, const SolverOptions& opts) {
  if (!(logC > 0.0) || !std::isfinite(logC)) {
    throw DomainError("logC must be positive and finite");
  }
  auto res = solve_pressure_equation(HatRhs{logC}, "theta-hat(logC)", opts);
  res.diagnostics["logC"] = logC;
  return res;
}

DimensionResult theta_type_iii(double gamma, double logC,
                               const SolverOptions& opts) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!(logC > 0.0)) throw DomainError("logC must be positive");
  double eg = std::exp(gamma);
  AffineRhs rhs{eg * (eg + 1.0) / (eg - 1.0) * logC,
                -eg / (eg - 1.0) * logC};
  auto res = solve_pressure_equation(rhs, "type-III(gamma,logC)", opts);
  res.diagnostics["gamma"] = gamma;
  res.diagnostics["logC"] = logC;
  return res;
}

DimensionResult dim_F_N(long long N, double tol) {
  if (N < 1) throw DomainError("digit bound must be at least 1");
  if (N == 1) {
    // Single admissible digit: one point, restricted pressure
    // -2 theta log(golden ratio) has no zero above 1/2.
    return exact_value(0.0, "bounded-digits(1)");
  }
  SolverOptions opts;
  opts.theta_tol = tol;
  BracketProvider pf = [N](double theta, double ptol) {
    long long depth = static_cast<long long>(
        std::ceil(2.0 * theta * std::log(2.0) / std::max(ptol, 1e-9)));
    depth = std::clamp<long long>(depth, 64, 2'000'000);
    return pressure_restricted(theta, static_cast<double>(N), depth);
  };
  auto res = bisect_root(pf, [](double) { return 0.0; },
                         "bounded-digits(" + std::to_string(N) + ")", opts);
  res.diagnostics["N"] = static_cast<double>(N);
  return res;
}

DimensionResult dim_E(const GrowthProfile& gp, const SolverOptions& opts) {
  const auto& a = gp.alpha;
  if (!a.converged && !a.overridden) {
    throw DomainError(
        "alpha diagnostic inconclusive; supply alpha_override or a longer "
        "horizon");
  }
  if (a.value.is_zero()) return exact_value(1.0, "growth-exponent(alpha=0)");
  if (a.value.is_infinite()) {
    const auto& xi = gp.xi;
    double x = override_or_value(xi, "xi", "xi_override");
    if (xi.value.is_infinite()) {
      return exact_value(0.0, "growth-exponent(alpha=inf, xi=inf)");
    }
    return exact_value(1.0 / (2.0 + x), "growth-exponent(alpha=inf)");
  }
  double alpha = a.num();
  double beta = override_or_value(gp.beta, "beta", "beta_override");
  auto res = theta_alpha_beta(alpha, std::min(beta, alpha), opts);
  res.branch = "growth-exponent(finite alpha)";
  return res;
}

DimensionResult dim_EL(const GrowthProfile& gp, const SolverOptions& opts) {
  const auto& a = gp.alpha;
  if (!a.converged && !a.overridden) {
    throw DomainError(
        "alpha diagnostic inconclusive; supply alpha_override or a longer "
        "horizon");
  }
  if (a.value.is_zero()) {
    return exact_value(1.0, "growth-exponent-max(alpha=0)");
  }
  if (a.value.is_infinite()) {
    const auto& g = gp.gamma;
    double gv = override_or_value(g, "gamma", "gamma_override");
    if (g.value.is_infinite()) {
      return exact_value(0.0, "growth-exponent-max(alpha=inf, gamma=inf)");
    }
    return exact_value(1.0 / (gv + 1.0), "growth-exponent-max(alpha=inf)");
  }
  double alpha = a.num();
  double beta = override_or_value(gp.beta, "beta", "beta_override");
  auto res = theta_alpha_beta(alpha, std::min(beta, alpha), opts);
  res.branch = "growth-exponent-max(finite alpha)";
  return res;
}

DimensionResult dim_limsup_family(const FunctionProfile& fp,
                                  LimsupFamily family,
                                  const SolverOptions& opts) {
  const char* tag = family == LimsupFamily::Coefficient
                        ? "coefficient-growth"
                        : "running-max-growth";
  const auto& B = fp.B;
  if (!B.converged && !B.overridden) {
    throw DomainError(
        "liminf scale invariant B inconclusive on the horizon; no analytic "
        "override supplied");
  }
  if (B.value.is_finite() && B.num() <= 1.0 + 1e-12) {
    return exact_value(1.0, std::string(tag) + "(B=1)");
  }
  if (B.value.is_infinite()) {
    const auto& b = fp.b;
    double bv = override_or_value(b, "b", "double-log scale override");
    if (b.value.is_infinite()) {
      return exact_value(0.0, std::string(tag) + "(B=inf, b=inf)");
    }
    return exact_value(1.0 / (bv + 1.0), std::string(tag) + "(B=inf)");
  }
  auto res = theta_log(std::log(B.num()), opts);
  res.branch = std::string(tag) + "(finite B)";
  return res;
}

DimensionResult dim_liminf_max(const FunctionProfile& fp,
                               const SolverOptions& opts) {
  const auto& C = fp.C;
  if (!C.converged && !C.overridden) {
    throw DomainError(
        "limsup scale invariant C inconclusive on the horizon; no analytic "
        "override supplied");
  }
  if (C.value.is_finite() && C.num() <= 1.0 + 1e-12) {
    return exact_value(1.0, "liminf-max(C=1)");
  }
  if (C.value.is_infinite()) {
    const auto& c = fp.c;
    double cv = override_or_value(c, "c", "double-log scale override");
    if (c.value.is_infinite()) {
      return exact_value(0.0, "liminf-max(C=inf, c=inf)");
    }
    return exact_value(1.0 / (cv + 1.0), "liminf-max(C=inf)");
  }
  if (!fp.limit_flag) {
    throw DomainError(
        "the limsup defining C must be a genuine limit for the finite-C "
        "formula; that hypothesis cannot be removed (piecewise-geometric "
        "counterexamples have strictly larger dimension)");
  }
  auto res = theta_hat(std::log(C.num()), opts);
  res.branch = "liminf-max(finite C, limit)";
  return res;
}

DimensionResult dim_sum_family(const SumFamilySpec& spec,
                               const SolverOptions& opts) {
  using K = SumFamilySpec::Kind;
  switch (spec.kind) {
    case K::ExpPower: {
      if (!(spec.r > 0.0)) throw DomainError("exponent r must be positive");
      if (spec.r < 0.5) return exact_value(1.0, "sum-set(exp_power, r<1/2)");
      return exact_value(0.5, "sum-set(exp_power, r>=1/2)");
    }
    case K::SqrtPlusR1:
      if (!(spec.c > 0.0)) throw DomainError("c must be positive");
      return exact_value(0.5, "sum-set(sqrt-scale, increasing remainder)");
    case K::SqrtPlusR2:
      if (!(spec.c > 0.0)) throw DomainError("c must be positive");
      return exact_value(0.5, "sum-set(sqrt-scale, vanishing oscillation)");
    case K::FloorPower: {
      if (!(spec.c > 0.0) || !(spec.d > 0.0))
        throw DomainError("c and d must be positive");
      if (!(spec.r > 0.0) || !(spec.r < 1.0))
        throw DomainError("r must lie in (0,1)");
      double s = spec.c * spec.d * (1.0 - spec.r);
      auto res = solve_pressure_equation(AffineRhs{2.0 * s, -s},
                                         "sum-set(floor-power)", opts);
      res.diagnostics["c"] = spec.c;
      res.diagnostics["d"] = spec.d;
      res.diagnostics["r"] = spec.r;
      return res;
    }
    case K::FloorExp: {
      if (!(spec.c > 0.0) || !(spec.gamma > 0.0))
        throw DomainError("c and gamma must be positive");
      double eg = std::exp(spec.gamma);
      AffineRhs rhs{spec.c * (eg + 1.0) / (eg - 1.0),
                    -spec.c / (eg - 1.0)};
      auto res = solve_pressure_equation(rhs, "sum-set(floor-exp)", opts);
      res.diagnostics["c"] = spec.c;
      res.diagnostics["gamma"] = spec.gamma;
      return res;
    }
    case K::Raw:
      break;
  }
  if (!spec.log_phi) throw DomainError("raw sum-set spec needs a callable");
  SumClassification cls = classify_sum_function(spec.log_phi);
  DimensionResult res;
  res.branch = "sum-set(" + branch_name(cls.branch) + ")";
  res.diagnostics["horizon"] = cls.profile.horizon;
  switch (cls.branch) {
    case SumBranch::FullDimension:
      res.lo = res.hi = 1.0;
      res.exact = true;
      break;
    case SumBranch::ExactHalfCor1:
    case SumBranch::ExactHalfCor2:
      res.lo = res.hi = 0.5;
      res.exact = true;
      break;
    case SumBranch::UpperHalfEd:
    case SumBranch::UpperHalfLimsup:
      res.lo = 0.0;
      res.hi = 0.5;
      res.upper_bound_only = true;
      break;
    case SumBranch::Indeterminate:
      res.lo = 0.0;
      res.hi = 1.0;
      res.indeterminate = true;
      res.converged = false;
      break;
  }
  return res;
}

LiaoRamsResult dim_liao_rams(const LogSeq& log_u, const LogSeq& log_v,
                             int horizon) {
  if (horizon < 4) throw DomainError("horizon must be at least 4");
  LiaoRamsResult out;
  std::vector<double> lu(horizon + 2), lv(horizon + 2);
  for (int k = 1; k <= horizon + 1; ++k) {
    lu[k] = log_u(k);
    lv[k] = log_v(k);
    if (lv[k] < -1e-12) throw DomainError("v_n must stay at least 1");
    if (!std::isfinite(lu[k]) || !std::isfinite(lv[k])) {
      throw DomainError("sequence overflows the horizon; shorten it");
    }
  }
  // limsup v_n/u_n finite is a standing hypothesis; flag apparent growth.
  int grow = 0;
  for (int k = horizon / 2; k <= horizon; ++k) {
    if (lv[k] - lu[k] > lv[k - 1] - lu[k - 1] + 1e-12) ++grow;
  }
  if (lv[horizon] - lu[horizon] > 1.0 && grow > horizon / 4) {
    out.ratio_warning = true;
  }

  double sum_v = 0.0, sum_u = lu[1];
  out.running_min = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> nodes;
  for (int n = 1; n <= horizon; ++n) {
    sum_v += lv[n];
    sum_u += lu[n + 1];
    double denom = 2.0 * sum_u - lv[n + 1];
    if (!(denom > 0.0)) throw DomainError("degenerate denominator in trace");
    double ratio = sum_v / denom;
    out.trace.push_back(ratio);
    out.running_min = std::min(out.running_min, ratio);
    nodes.emplace_back(static_cast<double>(n), ratio);
  }
  // Read the limit off the trace by polynomial extrapolation in 1/n.
  // Geometrically spaced nodes keep the extrapolation to x = 0 well
  // conditioned (consecutive indices would amplify rounding error
  // astronomically). Fall back to the tail infimum when the trace is not
  // smooth enough for the stability check.
  std::vector<std::pair<double, double>> ex_nodes;
  for (double n = horizon; n >= 3.0 && ex_nodes.size() < 9;
       n = std::floor(n * 0.7)) {
    ex_nodes.emplace_back(n, out.trace[static_cast<size_t>(n) - 1]);
  }
  ExtrapolationResult ex = extrapolate_to_limit(ex_nodes);
  double tail_inf = out.trace.back();
  for (size_t i = out.trace.size() - out.trace.size() / 4;
       i < out.trace.size(); ++i) {
    tail_inf = std::min(tail_inf, out.trace[i]);
  }
  double span = std::abs(out.trace.back() - out.running_min) + 1e-9;
  if (std::abs(ex.discrepancy) < 1e-7 &&
      ex.value > -0.01 && ex.value < 1.01 &&
      std::abs(ex.value - out.trace.back()) < 10.0 * span) {
    out.value = ex.value;
    out.extrapolated = true;
  } else {
    out.value = tail_inf;
  }
  return out;
}

}  // namespace cfdim
