#pragma once

// Certified evaluation of the pressure function
//
//   P(theta)   = lim_n (1/n) log sum over digit words of length n of
//                q_n(word)^{-2 theta}
//   P_M(theta) = the same limit with digits restricted to {1..M}.
//
// The finite-n partial sums S_n obey log S_{n+m} <= log S_n + log S_m +
// 2 theta log 2, so (1/n) log S_n brackets the limit from above and
// (1/n) log S_n - (2 theta log 2)/n from below. The unrestricted pressure
// additionally satisfies P_M <= P <= P_M + delta_M(theta) with an explicit
// digit-tail term, and P(theta) <= log zeta(2 theta) from the depth-one
// subadditive bound; both are used to assemble two-sided brackets.

#include <cstdint>
#include <optional>

#include "cfdim/cf_core.hpp"

namespace cfdim {

enum class PressureMethod { Auto, Enumerate, OperatorIteration };

struct PressureOptions {
  int grid_size = 512;          // operator discretization nodes on [0,1]
  std::int64_t enum_node_cap = 20'000'000;  // DFS budget for Enumerate
  std::int64_t exact_digit_cap = 2048;      // digits summed exactly per node
  int max_power_iters = 4000;
  double iter_tol = 3e-14;      // convergence tol on the log growth factor
};

struct PressureBracket {
  double lower = 0.0;
  double upper = 0.0;
  double theta = 0.0;
  double digit_bound = 0.0;     // M; +inf for the unrestricted pressure
  long long depth = 0;          // n used for the subadditive bracket
  PressureMethod method_used = PressureMethod::Auto;
  bool converged = true;        // false when a budget stopped refinement

  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
};

// log S_n for the digit-restricted sum, computed either by exact word
// enumeration or by iterating the weighted transfer operator
//   (L g)(x) = sum_{a<=M} (a+x)^{-2 theta} g(1/(a+x)),
// whose n-fold application at x=0 equals S_n exactly.
double restricted_log_sum(double theta, double digit_bound, long long depth,
                          PressureMethod method = PressureMethod::Auto,
                          const PressureOptions& opts = {});

// Two-sided bracket for P_M(theta) at the given depth.
PressureBracket pressure_restricted(double theta, double digit_bound,
                                    long long depth,
                                    PressureMethod method = PressureMethod::Auto,
                                    const PressureOptions& opts = {});

// Upper bound for the digit tail sum_{j>M} (2/j)^{2 theta}.
double tail_delta(double theta, double digit_bound);

// Upper bound on zeta(s), s > 1 (partial sum plus integral tail).
double zeta_upper(double s);

// Two-sided bracket for the unrestricted P(theta), combining the
// restricted bracket, the digit-tail bound, and the zeta cap.
PressureBracket pressure_full(double theta, double digit_bound,
                              long long depth,
                              PressureMethod method = PressureMethod::Auto,
                              const PressureOptions& opts = {});

struct RefineBudget {
  double digit_bound_max = 1e18;
  long long depth_max = 2'000'000;
};

// Bracket for P(theta) of width <= tol, choosing M and n from the target
// width. A non-finite tol returns a cheap coarse bracket. If the budget
// cannot reach tol the widest-effort bracket is returned with
// converged=false.
PressureBracket pressure_refine(double theta, double tol,
                                const RefineBudget& budget = {},
                                const PressureOptions& opts = {});

// Process-wide memo for pressure_refine keyed on (theta, tol); repeated
// solves share evaluations. Thread-safe.
void pressure_cache_clear();
std::size_t pressure_cache_size();

}  // namespace cfdim
