#include "cfdim/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "cfdim/numerics.hpp"

namespace cfdim {

namespace {

constexpr double kLog2 = 0.69314718055994530942;

void check_theta(double theta) {
  if (!(theta > 0.5))
    throw DomainError("pressure requires theta > 1/2 (singularity at 1/2)");
}

// ---- exact enumeration -------------------------------------------------

struct EnumState {
  double theta2;
  long long digit_bound;
  long long depth;
  std::int64_t nodes = 0;
  std::int64_t node_cap;
  std::vector<LogSumExp> acc;  // one accumulator per depth (we only read back)
};

// DFS over words, carrying (q_{n-1}, q_n) in doubles; continuants for
// bounded digits and small depth stay far below the double range.
void enum_rec(EnumState& st, int level, double q_prev, double q_cur,
              LogSumExp& sink) {
  for (long long a = 1; a <= st.digit_bound; ++a) {
    if (++st.nodes > st.node_cap)
      throw BudgetError("enumeration node budget exceeded");
    double q_next = static_cast<double>(a) * q_cur + q_prev;
    if (level + 1 == st.depth) {
      sink.add(-st.theta2 * std::log(q_next));
    } else {
      enum_rec(st, level + 1, q_cur, q_next, sink);
    }
  }
}

double log_sum_enumerate(double theta, long long digit_bound, long long depth,
                         const PressureOptions& opts) {
  if (digit_bound == 1) {
    // Single word (1,...,1): q_n follows the Fibonacci recurrence; rescale
    // to avoid overflow and accumulate the log.
    double q_prev = 0.0, q_cur = 1.0, log_scale = 0.0;
    for (long long i = 0; i < depth; ++i) {
      double q_next = q_cur + q_prev;
      q_prev = q_cur;
      q_cur = q_next;
      if (q_cur > 1e300) {
        q_prev /= 1e300;
        q_cur /= 1e300;
        log_scale += std::log(1e300);
      }
    }
    return -2.0 * theta * (log_scale + std::log(q_cur));
  }
  EnumState st;
  st.theta2 = 2.0 * theta;
  st.digit_bound = digit_bound;
  st.depth = depth;
  st.node_cap = opts.enum_node_cap;
  LogSumExp sink;
  enum_rec(st, 0, 0.0, 1.0, sink);
  return sink.value();
}

// ---- transfer-operator iteration --------------------------------------

// Far-digit closed forms: sum_{a=A+1}^{M} (a+x)^{-s} and the same with
// exponent s+1, via the midpoint (Euler-Maclaurin) integral approximation
//   sum_{a=A+1}^{M} f(a) ~ integral_{A+1/2}^{M+1/2} f(t) dt,
// whose error is negligible for A >= ~1000 at the tolerances used here.
double far_power_sum(double s, double x, double a_from, double a_to) {
  if (a_to < a_from) return 0.0;
  double lo = a_from - 0.5 + x, hi = a_to + 0.5 + x;
  return (std::pow(lo, 1.0 - s) - std::pow(hi, 1.0 - s)) / (s - 1.0);
}

struct OperatorEngine {
  double theta2;
  double digit_bound;
  long long exact_cap;  // digits handled exactly
  int grid;
  std::vector<double> nodes;               // x_i on [0,1]
  std::vector<std::vector<double>> weight; // weight[a-1][i] = (a+x_i)^{-2theta}
  std::vector<std::vector<double>> ymap;   // ymap[a-1][i] = 1/(a+x_i)

  OperatorEngine(double theta, double M, const PressureOptions& opts)
      : theta2(2.0 * theta), digit_bound(M), grid(opts.grid_size) {
    exact_cap = static_cast<long long>(
        std::min<double>(M, static_cast<double>(opts.exact_digit_cap)));
    nodes.resize(grid);
    for (int i = 0; i < grid; ++i)
      nodes[i] = static_cast<double>(i) / (grid - 1);
    weight.resize(exact_cap);
    ymap.resize(exact_cap);
    for (long long a = 1; a <= exact_cap; ++a) {
      auto& w = weight[a - 1];
      auto& y = ymap[a - 1];
      w.resize(grid);
      y.resize(grid);
      for (int i = 0; i < grid; ++i) {
        double ax = static_cast<double>(a) + nodes[i];
        w[i] = std::pow(ax, -theta2);
        y[i] = 1.0 / ax;
      }
    }
  }

  // Cubic (4-point Lagrange) interpolation of g at y in [0,1].
  double interp(const std::vector<double>& g, double y) const {
    double pos = y * (grid - 1);
    int i1 = static_cast<int>(pos);
    i1 = std::clamp(i1, 1, grid - 3);
    double t = pos - i1;
    double gm = g[i1 - 1], g0 = g[i1], g1 = g[i1 + 1], g2 = g[i1 + 2];
    double c0 = g0;
    double c1 = g1 - gm;
    double c2 = gm - 2.0 * g0 + g1;
    double c3 = -gm + 3.0 * g0 - 3.0 * g1 + g2;
    return c0 + 0.5 * t * (c1 + t * (c2 + t * c3));
  }

  // One application of the operator; returns the sup-norm used for
  // normalization so the caller can accumulate log growth.
  double apply(const std::vector<double>& g, std::vector<double>& out) const {
    // Far-digit linearization: g(1/(a+x)) ~ g(0) + g'(0)/(a+x) for
    // a > exact_cap (there 1/(a+x) < 1/exact_cap, far below a grid cell).
    double g0 = g[0];
    double g1 = (g[1] - g[0]) * (grid - 1);  // one-sided derivative at 0
    out.assign(grid, 0.0);
    for (int i = 0; i < grid; ++i) {
      double acc = 0.0;
      for (long long a = 1; a <= exact_cap; ++a)
        acc += weight[a - 1][i] * interp(g, ymap[a - 1][i]);
      if (digit_bound > static_cast<double>(exact_cap)) {
        double x = nodes[i];
        acc += g0 * far_power_sum(theta2, x,
                                  static_cast<double>(exact_cap) + 1.0,
                                  digit_bound);
        acc += g1 * far_power_sum(theta2 + 1.0, x,
                                  static_cast<double>(exact_cap) + 1.0,
                                  digit_bound);
      }
      out[i] = acc;
    }
    double norm = 0.0;
    for (double v : out) norm = std::max(norm, std::abs(v));
    for (double& v : out) v /= norm;
    return norm;
  }
};

// log S_n via power iteration with early stop: once the per-step growth
// log rho stabilizes, the remaining steps contribute (n-k) log rho.
double log_sum_operator(double theta, double digit_bound, long long depth,
                        const PressureOptions& opts) {
  OperatorEngine eng(theta, digit_bound, opts);
  std::vector<double> g(opts.grid_size, 1.0), h;
  double c = 0.0;          // accumulated log of normalizations
  double last_rho = 0.0;
  int stable = 0;
  long long k = 0;
  for (; k < depth && k < opts.max_power_iters; ++k) {
    double norm = eng.apply(g, h);
    double log_rho = std::log(norm);
    c += log_rho;
    g.swap(h);
    if (k > 0 && std::abs(log_rho - last_rho) < opts.iter_tol) {
      if (++stable >= 3) {
        ++k;
        break;
      }
    } else {
      stable = 0;
    }
    last_rho = log_rho;
  }
  if (k < depth) c += static_cast<double>(depth - k) * last_rho;
  // S_n = (L^n 1)(0); add the (normalized) eigenvector value at 0.
  return c + std::log(g[0]);
}

// ---- refine cache ------------------------------------------------------

struct CacheKey {
  long long theta_bits;
  long long tol_bits;
  bool operator<(const CacheKey& o) const {
    return theta_bits != o.theta_bits ? theta_bits < o.theta_bits
                                      : tol_bits < o.tol_bits;
  }
};

std::mutex g_cache_mutex;
std::map<CacheKey, PressureBracket> g_cache;

long long bits_of(double v) {
  long long b;
  static_assert(sizeof(b) == sizeof(v));
  std::memcpy(&b, &v, sizeof(b));
  return b;
}

}  // namespace

double restricted_log_sum(double theta, double digit_bound, long long depth,
                          PressureMethod method, const PressureOptions& opts) {
  check_theta(theta);
  if (!(digit_bound >= 1)) throw DomainError("digit bound must be >= 1");
  if (depth < 1) throw DomainError("depth must be >= 1");
  if (method == PressureMethod::Auto) {
    double words = std::pow(digit_bound, static_cast<double>(depth));
    method = (digit_bound < 1.5 ||
              words <= static_cast<double>(opts.enum_node_cap))
                 ? PressureMethod::Enumerate
                 : PressureMethod::OperatorIteration;
  }
  if (method == PressureMethod::Enumerate) {
    if (digit_bound > 1e9)
      throw DomainError("enumeration needs a modest digit bound");
    return log_sum_enumerate(theta, static_cast<long long>(digit_bound), depth,
                             opts);
  }
  return log_sum_operator(theta, digit_bound, depth, opts);
}

PressureBracket pressure_restricted(double theta, double digit_bound,
                                    long long depth, PressureMethod method,
                                    const PressureOptions& opts) {
  PressureMethod used = method;
  if (used == PressureMethod::Auto) {
    double words = std::pow(digit_bound, static_cast<double>(depth));
    used = (digit_bound < 1.5 ||
            words <= static_cast<double>(opts.enum_node_cap))
               ? PressureMethod::Enumerate
               : PressureMethod::OperatorIteration;
  }
  double ls = restricted_log_sum(theta, digit_bound, depth, used, opts);
  PressureBracket b;
  b.theta = theta;
  b.digit_bound = digit_bound;
  b.depth = depth;
  b.method_used = used;
  b.upper = ls / static_cast<double>(depth);
  b.lower = b.upper - 2.0 * theta * kLog2 / static_cast<double>(depth);
  return b;
}

double tail_delta(double theta, double digit_bound) {
  check_theta(theta);
  double s = 2.0 * theta;
  // sum_{j>M} (2/j)^s <= 2^s * [ (M+1)^-s + integral_{M+1}^inf t^-s dt ]
  double m1 = digit_bound + 1.0;
  return std::pow(2.0, s) *
         (std::pow(m1, -s) + std::pow(m1, 1.0 - s) / (s - 1.0));
}

double zeta_upper(double s) {
  if (!(s > 1.0)) throw DomainError("zeta_upper requires s > 1");
  const int cut = 20000;
  double sum = 0.0;
  for (int a = cut; a >= 1; --a) sum += std::pow(a, -s);
  sum += std::pow(static_cast<double>(cut), 1.0 - s) / (s - 1.0);
  return sum;
}

PressureBracket pressure_full(double theta, double digit_bound,
                              long long depth, PressureMethod method,
                              const PressureOptions& opts) {
  PressureBracket r = pressure_restricted(theta, digit_bound, depth, method, opts);
  PressureBracket b = r;
  b.digit_bound = std::numeric_limits<double>::infinity();
  b.upper = r.upper + tail_delta(theta, digit_bound);
  // Depth-one subadditive cap: P(theta) <= log sum_a a^{-2 theta}.
  b.upper = std::min(b.upper, std::log(zeta_upper(2.0 * theta)));
  return b;
}

PressureBracket pressure_refine(double theta, double tol,
                                const RefineBudget& budget,
                                const PressureOptions& opts) {
  check_theta(theta);
  if (std::isfinite(tol) && tol <= 0) throw DomainError("tol must be positive");
  if (!std::isfinite(tol)) {
    // Coarse single-shot bracket.
    return pressure_full(theta, 100.0, 64, PressureMethod::Auto, opts);
  }
  CacheKey key{bits_of(theta), bits_of(tol)};
  {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }

  // Choose M so the digit tail uses at most half (and n so the subadditive
  // gap uses at most 30%) of the budgeted width; the zeta cap often makes
  // the tail term irrelevant near the singularity.
  double s = 2.0 * theta;
  // tail_delta ~ 2^s (M+1)^{1-s} s/(s-1): invert for M.
  double want = 0.5 * tol * (s - 1.0) / (std::pow(2.0, s) * s);
  double M = std::pow(want, 1.0 / (1.0 - s)) - 1.0;
  M = std::clamp(M, 64.0, budget.digit_bound_max);
  long long n = static_cast<long long>(std::ceil(s * kLog2 / (0.3 * tol))) + 1;
  n = std::min(n, budget.depth_max);

  PressureBracket b = pressure_full(theta, M, n, PressureMethod::Auto, opts);
  b.converged = b.width() <= tol;
  if (!b.converged) {
    // One escalation round at the budget edge.
    PressureBracket c = pressure_full(theta, budget.digit_bound_max,
                                      budget.depth_max,
                                      PressureMethod::OperatorIteration, opts);
    if (c.width() < b.width()) b = c;
    b.converged = b.width() <= tol;
  }
  {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    g_cache.emplace(key, b);
  }
  return b;
}

void pressure_cache_clear() {
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  g_cache.clear();
}

std::size_t pressure_cache_size() {
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  return g_cache.size();
}

}  // namespace cfdim
