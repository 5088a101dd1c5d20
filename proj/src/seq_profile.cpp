#include "cfdim/seq_profile.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace cfdim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---- LogVal arithmetic ---------------------------------------------------

LogVal LogVal::from_double(double v) {
  LogVal out;
  if (v == 0.0) return out;
  out.sign = v > 0 ? 1 : -1;
  out.log_abs = std::log(std::abs(v));
  return out;
}

double LogVal::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

namespace {

LogVal lv_zero() { return LogVal{}; }

LogVal lv_neg(LogVal a) {
  a.sign = -a.sign;
  return a;
}

LogVal lv_add(const LogVal& a, const LogVal& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogVal& hi = a.log_abs >= b.log_abs ? a : b;
  const LogVal& lo = a.log_abs >= b.log_abs ? b : a;
  double d = lo.log_abs - hi.log_abs;  // <= 0
  LogVal out;
  if (a.sign == b.sign) {
    out.sign = a.sign;
    out.log_abs = hi.log_abs + std::log1p(std::exp(d));
  } else {
    double m = -std::expm1(d);  // 1 - exp(d) in [0,1]
    if (m == 0.0) return lv_zero();
    out.sign = hi.sign;
    out.log_abs = hi.log_abs + std::log(m);
  }
  return out;
}

LogVal lv_mul(const LogVal& a, const LogVal& b) {
  if (a.sign == 0 || b.sign == 0) return lv_zero();
  return LogVal{a.sign * b.sign, a.log_abs + b.log_abs};
}

LogVal lv_div(const LogVal& a, const LogVal& b) {
  if (b.sign == 0) throw DomainError("division by zero in expression");
  if (a.sign == 0) return lv_zero();
  return LogVal{a.sign * b.sign, a.log_abs - b.log_abs};
}

LogVal lv_pow(const LogVal& a, const LogVal& b) {
  double e = b.to_double();
  if (a.sign == 0) {
    if (e > 0) return lv_zero();
    throw DomainError("0 raised to a non-positive power");
  }
  if (a.sign < 0) throw DomainError("power of a negative base");
  return LogVal{1, e * a.log_abs};
}

LogVal lv_exp(const LogVal& a) { return LogVal{1, a.to_double()}; }

LogVal lv_log(const LogVal& a) {
  if (a.sign <= 0) throw DomainError("log of a non-positive value");
  return LogVal::from_double(a.log_abs);
}

LogVal lv_sqrt(const LogVal& a) {
  if (a.sign < 0) throw DomainError("sqrt of a negative value");
  if (a.sign == 0) return lv_zero();
  return LogVal{1, 0.5 * a.log_abs};
}

LogVal lv_floor(const LogVal& a, bool ceil_mode) {
  // Exact when the value fits in the integer range of a double; huge
  // values are left unchanged (floor is then indistinguishable anyway).
  if (a.sign == 0) return a;
  if (a.log_abs > 36.7) return a;  // |v| > ~2^53
  double v = a.to_double();
  return LogVal::from_double(ceil_mode ? std::ceil(v) : std::floor(v));
}

}  // namespace

// ---- parser ----------------------------------------------------------------

struct Expr {
  enum class Kind { Number, Variable, Param, Unary, Binary, Call } kind;
  double number = 0.0;
  std::string name;       // parameter or function name
  char op = 0;            // binary operator
  ExprPtr lhs, rhs;       // operands (rhs unused for unary/1-arg call)
};

namespace {

struct Parser {
  const std::string& src;
  std::size_t pos = 0;

  explicit Parser(const std::string& s) : src(s) {}

  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos < src.size() ? src[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("expression parse error at position " +
                     std::to_string(pos) + ": " + what);
  }

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos != src.size()) fail("trailing input");
    return e;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (true) {
      if (eat('+')) {
        e = binary('+', e, term());
      } else if (eat('-')) {
        e = binary('-', e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (true) {
      if (eat('*')) {
        e = binary('*', e, factor());
      } else if (eat('/')) {
        e = binary('/', e, factor());
      } else {
        return e;
      }
    }
  }

  ExprPtr factor() {
    ExprPtr base = unary();
    if (eat('^')) return binary('^', base, factor());  // right-assoc
    return base;
  }

  ExprPtr unary() {
    if (eat('-')) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Unary;
      e->lhs = unary();
      return e;
    }
    return primary();
  }

  ExprPtr primary() {
    skip();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    if (eat('(')) {
      ExprPtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr number() {
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[pos])) ||
            src[pos] == '.'))
      ++pos;
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E') &&
        pos + 1 < src.size() &&
        (std::isdigit(static_cast<unsigned char>(src[pos + 1])) ||
         ((src[pos + 1] == '+' || src[pos + 1] == '-') && pos + 2 < src.size() &&
          std::isdigit(static_cast<unsigned char>(src[pos + 2]))))) {
      pos += 2;
      while (pos < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos])))
        ++pos;
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Number;
    e->number = std::stod(src.substr(start, pos - start));
    return e;
  }

  ExprPtr ident() {
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) ||
            src[pos] == '_'))
      ++pos;
    std::string name = src.substr(start, pos - start);
    if (eat('(')) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Call;
      e->name = name;
      e->lhs = expr();
      if (name == "pow") {
        if (!eat(',')) fail("pow expects two arguments");
        e->rhs = expr();
      }
      if (!eat(')')) fail("expected ')' after function arguments");
      return e;
    }
    auto e = std::make_shared<Expr>();
    if (name == "k" || name == "n") {
      e->kind = Expr::Kind::Variable;
    } else if (name == "e") {
      e->kind = Expr::Kind::Number;
      e->number = 2.718281828459045235;
    } else if (name == "pi") {
      e->kind = Expr::Kind::Number;
      e->number = 3.141592653589793238;
    } else {
      e->kind = Expr::Kind::Param;
      e->name = name;
    }
    return e;
  }

  ExprPtr binary(char op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }
};

}  // namespace

ExprPtr parse_expression(const std::string& source) {
  Parser p(source);
  return p.parse();
}

LogVal eval_log(const ExprPtr& e, double variable, const ParamMap& params) {
  switch (e->kind) {
    case Expr::Kind::Number:
      return LogVal::from_double(e->number);
    case Expr::Kind::Variable:
      return LogVal::from_double(variable);
    case Expr::Kind::Param: {
      auto it = params.find(e->name);
      if (it == params.end())
        throw DomainError("unknown symbol '" + e->name + "' in expression");
      return LogVal::from_double(it->second);
    }
    case Expr::Kind::Unary:
      return lv_neg(eval_log(e->lhs, variable, params));
    case Expr::Kind::Binary: {
      LogVal a = eval_log(e->lhs, variable, params);
      LogVal b = eval_log(e->rhs, variable, params);
      switch (e->op) {
        case '+': return lv_add(a, b);
        case '-': return lv_add(a, lv_neg(b));
        case '*': return lv_mul(a, b);
        case '/': return lv_div(a, b);
        case '^': return lv_pow(a, b);
      }
      throw DomainError("bad operator");
    }
    case Expr::Kind::Call: {
      LogVal a = eval_log(e->lhs, variable, params);
      if (e->name == "exp") return lv_exp(a);
      if (e->name == "log") return lv_log(a);
      if (e->name == "sqrt") return lv_sqrt(a);
      if (e->name == "floor") return lv_floor(a, false);
      if (e->name == "ceil") return lv_floor(a, true);
      if (e->name == "pow")
        return lv_pow(a, eval_log(e->rhs, variable, params));
      throw DomainError("unknown function '" + e->name + "'");
    }
  }
  throw DomainError("bad expression node");
}

LogSeq seq_from_expression(const std::string& source, const ParamMap& params) {
  ExprPtr e = parse_expression(source);
  return [e, params](double k) -> double {
    LogVal v = eval_log(e, k, params);
    if (v.sign < 0)
      throw DomainError("sequence expression produced a negative value");
    return v.sign == 0 ? -kInf : v.log_abs;
  };
}

// ---- trace classification -------------------------------------------------

namespace {

// Tail window: last quarter of the trace, at least 3 entries.
std::pair<std::size_t, std::size_t> tail_window(std::size_t n) {
  std::size_t start = n - std::max<std::size_t>(3, n / 4);
  return {std::min(start, n - 1), n};
}

bool nondecreasing(const std::vector<double>& v, std::size_t from) {
  for (std::size_t i = from + 1; i < v.size(); ++i)
    if (v[i] < v[i - 1] - 1e-12) return false;
  return true;
}

bool nonincreasing(const std::vector<double>& v, std::size_t from) {
  for (std::size_t i = from + 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + 1e-12) return false;
  return true;
}

constexpr double kInfinityThreshold = 1e8;
constexpr double kZeroFloor = 1e-6;
constexpr double kCauchyTol = 5e-3;
constexpr double kOneSnapTol = 5e-3;

// Classify the limit of a trace of nonnegative values (NaN-free).
LimitEstimate classify_limit(std::vector<double> trace,
                             bool snap_to_one = false) {
  LimitEstimate est;
  est.trace = trace;
  if (trace.size() < 4) {
    est.converged = false;
    est.value = ExtReal::finite(trace.empty() ? 0.0 : trace.back());
    return est;
  }
  auto [t0, t1] = tail_window(trace.size());
  double mx = -kInf, mn = kInf;
  for (std::size_t i = t0; i < t1; ++i) {
    mx = std::max(mx, trace[i]);
    mn = std::min(mn, trace[i]);
  }
  if (mx > kInfinityThreshold || std::isinf(trace.back())) {
    if (trace.back() >= trace[t0] || std::isinf(trace.back())) {
      est.value = ExtReal::infinite();
      est.converged = true;
      return est;
    }
  }
  if (mx < kZeroFloor && nonincreasing(trace, t0)) {
    est.value = ExtReal::zero();
    est.converged = true;
    return est;
  }
  if (snap_to_one && mx <= 1.0 + kOneSnapTol && mn >= 1.0 - kOneSnapTol &&
      (nonincreasing(trace, t0) || mx - 1.0 <= 1e-9)) {
    est.value = ExtReal::finite(1.0);
    est.converged = true;
    return est;
  }
  double scale = std::max(1.0, std::abs(trace.back()));
  if (mx - mn <= kCauchyTol * scale) {
    est.value = ExtReal::finite(trace.back());
    est.converged = true;
    return est;
  }
  est.value = ExtReal::finite(trace.back());
  est.converged = false;
  return est;
}

// A divergence check for slowly growing traces (polynomial growth),
// used by the sparsity hypothesis: strictly rising and roughly doubling
// over the second half.
bool diverging(const std::vector<double>& trace) {
  if (trace.size() < 8) return false;
  if (std::isinf(trace.back())) return true;
  std::size_t mid = trace.size() / 2;
  if (!nondecreasing(trace, mid)) return false;
  return trace.back() >= 1.8 * std::max(1e-300, trace[mid]) &&
         trace.back() > 4.0;
}

void apply_override(LimitEstimate& est, const std::optional<ExtReal>& ov) {
  if (!ov) return;
  est.value = *ov;
  est.converged = true;
  est.overridden = true;
}

}  // namespace

// ---- growth profile --------------------------------------------------------

GrowthProfile growth_profile(const SequenceTriple& t, int k_max) {
  if (k_max < 8) throw DomainError("growth_profile needs k_max >= 8");
  GrowthProfile gp;
  gp.horizon = k_max;

  std::vector<double> log_n(1, 0.0), log_s(1, 0.0);  // 1-based storage
  LogSumExp sum_llog_s;  // log of sum_j log s_j
  std::vector<double> alpha_tr, beta_tr, xi_tr, gamma_tr;
  int degenerate_gamma = 0, gamma_entries = 0;
  int k_eff = 0;

  for (int k = 1; k <= k_max; ++k) {
    double ln = t.log_n(k);
    double ls = t.log_s(k);
    if (!std::isfinite(ln)) break;  // index overflow: stop the trace
    if (!std::isfinite(ls)) {
      // log s_k left the double range; the invariants are ratios of huge
      // quantities, so judge convergence from the prefix instead of
      // treating representation overflow as divergence.
      break;
    }
    log_n.push_back(ln);
    log_s.push_back(ls);
    k_eff = k;

    // xi entry uses s_{k} against the sum up to k-1: compute before adding.
    if (k >= 2 && !sum_llog_s.empty()) {
      double denom = sum_llog_s.value();  // log of sum_{j<k} log s_j
      xi_tr.push_back(ls > 0 ? std::exp(std::log(ls) - denom)
                             : 0.0);
    }
    if (ls > 0) sum_llog_s.add(std::log(ls));

    // alpha_k = (sum_{j<=k} log s_j) / n_k, in log scale.
    double la = sum_llog_s.empty() ? -kInf : sum_llog_s.value() - ln;
    alpha_tr.push_back(std::exp(la));
    beta_tr.push_back(ls > 0 ? std::exp(std::log(ls) - ln) : 0.0);

    // gamma_k = exp(loglog s_k / n_k); needs s_k > 1 so that
    // loglog s_k = log(ls) is defined. n_k enters through its log to
    // survive n_k beyond the double range.
    if (ls > 0) {
      double loglog_s = std::log(ls);
      double ratio;  // loglog s_k / n_k
      if (ln < 700.0)
        ratio = loglog_s / std::exp(ln);
      else
        ratio = (loglog_s == 0.0)
                    ? 0.0
                    : (loglog_s > 0 ? 1.0 : -1.0) *
                          std::exp(std::log(std::abs(loglog_s)) - ln);
      gamma_tr.push_back(std::exp(ratio));
      ++gamma_entries;
    } else {
      ++degenerate_gamma;
    }
  }

  gp.alpha = classify_limit(alpha_tr);
  gp.beta = classify_limit(beta_tr);
  gp.xi = classify_limit(xi_tr);
  gp.gamma = classify_limit(gamma_tr, /*snap_to_one=*/true);
  if (gamma_entries < 4) {
    gp.gamma.degenerate = true;
    gp.gamma.converged = false;
  }
  apply_override(gp.alpha, t.alpha_override);
  apply_override(gp.beta, t.beta_override);
  apply_override(gp.xi, t.xi_override);
  apply_override(gp.gamma, t.gamma_override);
  gp.effective_horizon = k_eff;
  return gp;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    default: return "inconclusive";
  }
}

HypothesisReport check_hypotheses(const SequenceTriple& t, int k_max) {
  HypothesisReport rep;
  std::vector<double> h1_tr, h2_tr;
  for (int k = 1; k <= k_max; ++k) {
    double ln = t.log_n(k);
    if (!std::isfinite(ln)) {
      h1_tr.push_back(kInf);
      break;
    }
    h1_tr.push_back(std::exp(ln - std::log(static_cast<double>(k))));
    double ls = t.log_s(k), lt = t.log_t(k);
    if (std::isfinite(ls) && std::isfinite(lt) && lt != 0.0)
      h2_tr.push_back(ls / lt);
  }

  // H1: n_k / k -> infinity.
  {
    LimitEstimate e = classify_limit(h1_tr);
    if (e.value.is_infinite() || diverging(h1_tr))
      rep.h1 = Verdict::Holds;
    else if (e.converged)
      rep.h1 = Verdict::Fails;
    else
      rep.h1 = Verdict::Inconclusive;
  }
  // H2: log s_k / log t_k -> 1.
  {
    LimitEstimate e = classify_limit(h2_tr, /*snap_to_one=*/true);
    if (e.converged && e.value.is_finite() &&
        std::abs(e.value.value - 1.0) <= 1e-2)
      rep.h2 = Verdict::Holds;
    else if (e.converged || diverging(h2_tr))
      rep.h2 = Verdict::Fails;
    else
      rep.h2 = Verdict::Inconclusive;
  }
  // H3: alpha and beta limits exist (Cauchy), or are certified infinite.
  {
    GrowthProfile gp = growth_profile(t, k_max);
    bool a_ok = gp.alpha.converged;
    bool b_ok = gp.beta.converged;
    if (a_ok && b_ok)
      rep.h3 = Verdict::Holds;
    else
      rep.h3 = Verdict::Inconclusive;
  }
  return rep;
}

// ---- function profile -------------------------------------------------------

namespace {

// Sample indices: dense start, then geometric; keeps traces small while
// still reaching large n.
std::vector<double> sample_points(int n_max) {
  std::vector<double> pts;
  double n = 1;
  while (n <= n_max) {
    pts.push_back(n);
    double step = std::max(1.0, std::floor(n * 0.04));
    n += step;
  }
  if (pts.back() != n_max) pts.push_back(n_max);
  return pts;
}

double tail_min(const std::vector<double>& v) {
  auto [t0, t1] = tail_window(v.size());
  double m = kInf;
  for (std::size_t i = t0; i < t1; ++i) m = std::min(m, v[i]);
  return m;
}

double tail_max(const std::vector<double>& v) {
  auto [t0, t1] = tail_window(v.size());
  double m = -kInf;
  for (std::size_t i = t0; i < t1; ++i) m = std::max(m, v[i]);
  return m;
}

// liminf/limsup estimate: extremum over the tail plus a convergence flag
// from agreement between the two halves of the tail.
LimitEstimate extremal_estimate(const std::vector<double>& tr, bool is_sup,
                                bool snap_to_one) {
  LimitEstimate est;
  est.trace = tr;
  if (tr.size() < 8) return est;
  auto [t0, t1] = tail_window(tr.size());
  std::size_t mid = (t0 + t1) / 2;
  auto window_ext = [&](std::size_t a, std::size_t b) {
    double m = is_sup ? -kInf : kInf;
    for (std::size_t i = a; i < b; ++i)
      m = is_sup ? std::max(m, tr[i]) : std::min(m, tr[i]);
    return m;
  };
  double e1 = window_ext(t0, mid), e2 = window_ext(mid, t1);
  double ext = is_sup ? std::max(e1, e2) : std::min(e1, e2);
  if (ext > kInfinityThreshold || std::isinf(ext)) {
    est.value = ExtReal::infinite();
    est.converged = e2 >= e1;  // still growing
    return est;
  }
  if (ext < kZeroFloor) {
    est.value = ExtReal::zero();
    est.converged = true;
    return est;
  }
  if (snap_to_one && std::abs(e2 - 1.0) <= kOneSnapTol &&
      std::abs(e1 - 1.0) <= 2 * kOneSnapTol) {
    est.value = ExtReal::finite(1.0);
    est.converged = true;
    return est;
  }
  est.value = ExtReal::finite(ext);
  est.converged = std::abs(e1 - e2) <= kCauchyTol * std::max(1.0, std::abs(ext));
  return est;
}

}  // namespace

FunctionProfile function_profile(const LogSeq& log_psi, int n_max) {
  if (n_max < 64) throw DomainError("function_profile needs n_max >= 64");
  FunctionProfile fp;
  fp.horizon = n_max;
  std::vector<double> pts = sample_points(n_max);

  std::vector<double> g;        // exp(log psi / n)
  std::vector<double> h;        // exp(loglog psi / n)
  std::vector<double> sq, lin;  // log psi / sqrt(n), log psi / n
  for (double n : pts) {
    double lp = log_psi(n);
    if (std::isnan(lp)) continue;
    if (std::isinf(lp)) break;  // overflow horizon: judge from the prefix
    double ratio = lp / n;  // may be inf
    lin.push_back(ratio);
    g.push_back(std::exp(ratio));
    sq.push_back(lp / std::sqrt(n));
    if (lp > 0)
      h.push_back(std::exp(std::log(lp) / n));
  }

  fp.B = extremal_estimate(g, /*is_sup=*/false, /*snap_to_one=*/true);
  fp.C = extremal_estimate(g, /*is_sup=*/true, /*snap_to_one=*/true);
  fp.b = extremal_estimate(h, false, true);
  fp.c = extremal_estimate(h, true, true);
  fp.sqrt_scale = extremal_estimate(sq, true, false);
  fp.linear_scale = extremal_estimate(lin, true, false);

  // limit flag: the limsup C is a genuine limit when the whole tail of g
  // is Cauchy (B and C then agree).
  {
    LimitEstimate whole = classify_limit(g, /*snap_to_one=*/true);
    fp.limit_flag = whole.converged && whole.value.is_finite() &&
                    fp.C.value.is_finite() && fp.B.value.is_finite() &&
                    std::abs(fp.B.num() - fp.C.num()) <=
                        kCauchyTol * std::max(1.0, fp.C.num());
    if (fp.B.value.is_infinite() && fp.C.value.is_infinite())
      fp.limit_flag = true;
  }

  // Condition (ed): log psi(n + eps sqrt n) - log psi(n) >= delta.
  {
    bool all_hold = true, any_fail = false, any_unknown = false;
    for (double eps : {1.0, 0.5, 0.25}) {
      std::vector<double> d;
      for (double n : pts) {
        if (n < 16) continue;
        double shifted = std::floor(n + eps * std::sqrt(n));
        double v = log_psi(shifted) - log_psi(n);
        if (std::isnan(v)) continue;
        d.push_back(v);
      }
      if (d.size() < 8) {
        any_unknown = true;
        continue;
      }
      double lo = tail_min(d), hi = tail_max(d);
      if (std::isinf(lo) || lo >= 1e-3) continue;  // holds for this eps
      if (hi < 1e-3)
        any_fail = true;  // the shift gain vanishes
      else
        any_unknown = true;
      all_hold = false;
    }
    if (all_hold)
      fp.condition_ed = Verdict::Holds;
    else if (any_fail && !any_unknown)
      fp.condition_ed = Verdict::Fails;
    else
      fp.condition_ed = Verdict::Inconclusive;
  }

  // Condition (maxine): with psi = exp(c sqrt n + r2(n)), the block
  // oscillation max |r2(k)-r2(m^2)| over m^2 < k <= (m+1)^2 vanishes.
  {
    if (fp.sqrt_scale.value.is_finite() && fp.sqrt_scale.converged &&
        fp.sqrt_scale.num() > 0.05) {
      double chat = fp.sqrt_scale.num();
      auto r2 = [&](double n) { return log_psi(n) - chat * std::sqrt(n); };
      std::vector<double> osc;
      int m_hi = static_cast<int>(std::floor(std::sqrt(double(n_max)))) - 1;
      int m_lo = std::max(3, m_hi / 3);
      for (int m = m_lo; m <= m_hi; ++m) {
        double base = r2(double(m) * m);
        double worst = 0.0;
        for (int k = m * m + 1; k <= (m + 1) * (m + 1); ++k)
          worst = std::max(worst, std::abs(r2(k) - base));
        osc.push_back(worst);
      }
      if (osc.size() >= 8) {
        double first = osc.front(), last = tail_max(osc);
        if (last < 0.05 && last <= 0.75 * std::max(first, 1e-9))
          fp.condition_maxine = Verdict::Holds;
        else if (last > 0.5 && last >= first)
          fp.condition_maxine = Verdict::Fails;
      }
    }
  }
  return fp;
}

// ---- sum classifier ----------------------------------------------------------

std::string branch_name(SumBranch b) {
  switch (b) {
    case SumBranch::FullDimension: return "full_dimension";
    case SumBranch::ExactHalfCor1: return "exact_half_cor1";
    case SumBranch::ExactHalfCor2: return "exact_half_cor2";
    case SumBranch::UpperHalfEd: return "upper_half_ed";
    case SumBranch::UpperHalfLimsup: return "upper_half_limsup";
    default: return "indeterminate";
  }
}

SumClassification classify_sum_function(const LogSeq& log_phi, int n_max) {
  SumClassification out;
  out.profile = function_profile(log_phi, n_max);
  const FunctionProfile& fp = out.profile;

  // Superlinearity phi(n)/n -> infinity must be numerically certified
  // before any branch applies.
  std::vector<double> super;
  for (double n : sample_points(n_max)) {
    double v = log_phi(n) - std::log(n);
    if (!std::isnan(v)) super.push_back(v);
  }
  bool super_certified =
      !super.empty() &&
      (std::isinf(super.back()) ||
       (nondecreasing(super, super.size() - std::max<std::size_t>(
                                                 3, super.size() / 4)) &&
        (super.back() > std::log(1e6) ||
         (super.back() > std::log(1e3) &&
          super.back() - super[super.size() / 2] > 2.0))));
  if (!super_certified) {
    bool rising = super.size() > 8 && super.back() > super[super.size() / 2];
    out.branch = SumBranch::Indeterminate;
    out.note = rising ? "phi(n)/n appears to diverge but too slowly to "
                        "certify on this horizon; no branch applies"
                      : "phi(n)/n -> infinity not observed";
    return out;
  }

  // Full-dimension branch: sqrt-scale limsup certified zero, either by the
  // zero floor or by a clean power-law decay of the trace.
  const auto& sq = fp.sqrt_scale;
  bool sqrt_zero = sq.value.is_zero();
  if (!sqrt_zero && sq.value.is_finite() && !sq.trace.empty() &&
      sq.trace.back() < 0.75) {
    // Regress log(trace) on log(n) over the second half.
    const auto& tr = sq.trace;
    std::vector<double> pts = sample_points(n_max);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = tr.size() / 2; i < tr.size() && i < pts.size(); ++i) {
      if (!(tr[i] > 0)) continue;
      double x = std::log(pts[i]), y = std::log(tr[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    if (cnt >= 8) {
      double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
      if (slope < -0.04) sqrt_zero = true;
    }
  }
  if (sqrt_zero) {
    out.branch = SumBranch::FullDimension;
    out.note = "sqrt-scale limsup certified zero (decaying trace)";
    return out;
  }

  // Exact-1/2 corollaries: sqrt-scale converges to a positive constant.
  if (sq.converged && sq.value.is_finite() && sq.num() > 0.05) {
    double chat = sq.num();
    std::vector<double> pts = sample_points(n_max);
    bool r1_monotone = true;
    double prev = -kInf;
    for (std::size_t i = pts.size() / 2; i < pts.size(); ++i) {
      double r1 = log_phi(pts[i]) - chat * std::sqrt(pts[i]);
      if (r1 < prev - 0.02 * std::max(1.0, std::abs(prev))) {
        r1_monotone = false;
        break;
      }
      prev = r1;
    }
    if (r1_monotone) {
      out.branch = SumBranch::ExactHalfCor1;
      out.note = "phi = exp(c sqrt(n) + increasing remainder), c ~ " +
                 std::to_string(chat);
      return out;
    }
    if (fp.condition_maxine == Verdict::Holds) {
      out.branch = SumBranch::ExactHalfCor2;
      out.note = "phi = exp(c sqrt(n) + r2), block oscillation of r2 vanishes";
      return out;
    }
  }

  if (fp.linear_scale.value.is_infinite()) {
    out.branch = SumBranch::UpperHalfLimsup;
    out.note = "linear-scale limsup infinite: upper bound 1/2 only";
    return out;
  }
  if (fp.condition_ed == Verdict::Holds) {
    out.branch = SumBranch::UpperHalfEd;
    out.note = "shift condition holds: upper bound 1/2 only";
    return out;
  }
  out.branch = SumBranch::Indeterminate;
  out.note = "no branch certified";
  return out;
}

}  // namespace cfdim
