#pragma once

// Growth diagnostics for sequence triples ({n_k},{s_k},{t_k}) and for
// positive functions psi(n): the invariants alpha, beta, xi, gamma and
// B, b, C, c that drive the dimension dispatch, plus the sum-set branch
// classifier. Everything is evaluated in log scale; the interesting
// profiles are doubly exponential.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cfdim/cf_core.hpp"
#include "cfdim/numerics.hpp"

namespace cfdim {

// ---- expression mini-language ------------------------------------------
//
// Grammar: numbers, the index variable (spelled `k` or `n`), named
// parameters, constants `e` and `pi`, operators + - * / ^ and functions
// exp, log, sqrt, floor, ceil, pow(x,y). Evaluation returns the natural
// log of the (signed) value so doubly exponential sequences stay
// representable.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct ParseError : DomainError {
  using DomainError::DomainError;
};

ExprPtr parse_expression(const std::string& source);

// value = sign * exp(log_abs); sign == 0 means exactly zero.
struct LogVal {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  static LogVal from_double(double v);
  double to_double() const;  // may overflow to +-inf
};

using ParamMap = std::map<std::string, double>;

LogVal eval_log(const ExprPtr& e, double variable, const ParamMap& params = {});

// Generator view of a positive sequence: returns log f(k).
using LogSeq = std::function<double(double)>;

// Build a LogSeq from an expression; throws DomainError at call time if
// the expression yields a non-positive value.
LogSeq seq_from_expression(const std::string& source,
                           const ParamMap& params = {});

// ---- profiles ------------------------------------------------------------

struct LimitEstimate {
  ExtReal value = ExtReal::finite(0.0);
  bool converged = false;
  bool overridden = false;
  bool degenerate = false;  // quantity undefined on the horizon
  std::vector<double> trace;

  double num() const { return value.is_finite() ? value.value : (value.is_zero() ? 0.0 : std::numeric_limits<double>::infinity()); }
};

struct SequenceTriple {
  LogSeq log_n, log_s, log_t;
  std::optional<ExtReal> alpha_override, beta_override, xi_override,
      gamma_override;
};

struct GrowthProfile {
  LimitEstimate alpha;  // lim (1/n_k) sum_{j<=k} log s_j
  LimitEstimate beta;   // lim (log s_k)/n_k
  LimitEstimate xi;     // limsup log s_{k+1} / sum_{j<=k} log s_j
  LimitEstimate gamma;  // limsup exp(loglog s_k / n_k)
  int horizon = 0;           // requested k_max
  int effective_horizon = 0; // last k with representable values
};

GrowthProfile growth_profile(const SequenceTriple& t, int k_max = 48);

enum class Verdict { Holds, Fails, Inconclusive };

std::string verdict_name(Verdict v);

struct HypothesisReport {
  Verdict h1 = Verdict::Inconclusive;  // n_k / k -> infinity
  Verdict h2 = Verdict::Inconclusive;  // log s_k / log t_k -> 1
  Verdict h3 = Verdict::Inconclusive;  // alpha and beta limits exist
  std::string notes;
  bool all_hold() const {
    return h1 == Verdict::Holds && h2 == Verdict::Holds && h3 == Verdict::Holds;
  }
};

HypothesisReport check_hypotheses(const SequenceTriple& t, int k_max = 48);

struct FunctionProfile {
  LimitEstimate B;  // liminf psi(n)^{1/n}
  LimitEstimate b;  // liminf exp(loglog psi(n) / n)
  LimitEstimate C;  // limsup psi(n)^{1/n}
  LimitEstimate c;  // limsup exp(loglog psi(n) / n)
  bool limit_flag = false;  // the C-limsup is a genuine limit
  LimitEstimate sqrt_scale;    // limsup log psi(n)/sqrt(n)
  LimitEstimate linear_scale;  // limsup log psi(n)/n
  Verdict condition_ed = Verdict::Inconclusive;      // shift lower bound
  Verdict condition_maxine = Verdict::Inconclusive;  // block oscillation
  int horizon = 0;
};

FunctionProfile function_profile(const LogSeq& log_psi, int n_max = 40000);

enum class SumBranch {
  FullDimension,   // superlinear, sqrt-scale limsup certified zero
  ExactHalfCor1,   // exp(c sqrt n + increasing lower-order term)
  ExactHalfCor2,   // exp(c sqrt n + vanishing block oscillation)
  UpperHalfEd,     // shift condition: dimension <= 1/2 only
  UpperHalfLimsup, // linear-scale limsup infinite: dimension <= 1/2 only
  Indeterminate
};

std::string branch_name(SumBranch b);

struct SumClassification {
  SumBranch branch = SumBranch::Indeterminate;
  std::string note;
  FunctionProfile profile;
};

SumClassification classify_sum_function(const LogSeq& log_phi,
                                        int n_max = 40000);

}  // namespace cfdim
