#include "cfdim/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "cfdim/numerics.hpp"
#include "cfdim/pressure.hpp"

namespace cfdim {

namespace {

using u128 = unsigned __int128;

double logaddexp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// Dyadic band of a cylinder with q(q+q') = D: the band m with
// 2^-m <= 1/D < 2^-(m-1)}, i.e. D in (2^{m-1}, 2^m]; exact powers of two
// fall in the lower band.
int band_of(u128 D) {
  int bits = 0;
  u128 d = D;
  while (d > 1) {
    d >>= 1;
    ++bits;
  }
  bool pow2 = (D & (D - 1)) == 0;
  return pow2 ? bits : bits + 1;
}

struct BandEnumState {
  int k;
  long long cap;  // 0 = unbounded
  u128 limit;     // words kept while q(q+q') <= limit
  std::uint64_t node_cap;
  std::uint64_t nodes = 0;
  DyadicBandCount* out;
};

void band_dfs(BandEnumState& st, int depth, std::uint64_t q,
              std::uint64_t q_prev) {
  for (long long a = 1;; ++a) {
    if (st.cap > 0 && a > st.cap) break;
    u128 qn = static_cast<u128>(a) * q + q_prev;
    u128 D = qn * (qn + q);
    if (D > st.limit) break;  // monotone in the digit and in the prefix
    if (++st.nodes > st.node_cap) {
      throw BudgetError("band enumeration exceeded the node budget");
    }
    if (depth == st.k) {
      ++st.out->table[band_of(D)];
      ++st.out->total;
    } else {
      band_dfs(st, depth + 1, static_cast<std::uint64_t>(qn), q);
    }
  }
}

}  // namespace

DyadicBandCount band_counts(int k, int m_max, long long digit_cap,
                            std::uint64_t node_cap) {
  if (k < 1) throw DomainError("depth k must be positive");
  if (m_max < 1 || m_max > 120) {
    throw DomainError("band bound m_max must lie in [1, 120]");
  }
  DyadicBandCount out;
  out.k = k;
  out.digit_cap = digit_cap;
  out.m_max = m_max;
  BandEnumState st{k, digit_cap, u128(1) << m_max, node_cap, 0, &out};
  band_dfs(st, 1, 1, 0);
  return out;
}

// ---- certified band-count bounds via an interval-hull DP -------------------
//
// State after j digits: (u, r) with u = log2 q_j and r = q_{j-1}/q_j. A
// digit a maps (u, r) -> (u + log2(a + r), 1/(a + r)), and the dyadic
// band of the final cylinder is determined by 2u + log2(1+r). Words are
// binned on a (u, r) grid; each bin carries an exact count and an
// interval hull of the reachable (u, r), so per-band totals give
// certified lower bounds (hull inside the band) and upper bounds (hull
// meets the band).

namespace {

struct HullBucket {
  double cnt = 0.0;
  float ulo = 0, uhi = 0, rlo = 0, rhi = 0;
};

}  // namespace

BandBoundsCertified certified_band_bounds(int k, long long digit_cap,
                                          int m_top,
                                          long long digit_horizon) {
  constexpr double du = 0.008, dr = 0.01;
  const int nu = static_cast<int>((m_top + 2) / 2.0 / du) + 2;
  const int nr = static_cast<int>(1.0 / dr) + 2;
  const double u_top = (m_top + 2) / 2.0;
  std::vector<HullBucket> cur(static_cast<size_t>(nu) * nr), nxt(cur.size());

  auto at = [&](std::vector<HullBucket>& g, int iu, int ir) -> HullBucket& {
    return g[static_cast<size_t>(iu) * nr + ir];
  };

  // Seed: q_0 = 1, q_{-1} = 0.
  {
    HullBucket& b = at(cur, 0, 0);
    b.cnt = 1.0;
    b.ulo = b.uhi = 0.0f;
    b.rlo = b.rhi = 0.0f;
  }

  const long long amax = digit_cap > 0 ? digit_cap
                                      : std::max<long long>(2, digit_horizon);

  for (int level = 0; level < k; ++level) {
    for (auto& b : nxt) b.cnt = 0.0;
    for (int iu = 0; iu < nu; ++iu) {
      for (int ir = 0; ir < nr; ++ir) {
        const HullBucket& src = at(cur, iu, ir);
        if (src.cnt == 0.0) continue;
        for (long long a = 1; a <= amax; ++a) {
          double ulo = src.ulo + std::log2(a + static_cast<double>(src.rlo)) -
                       1e-9;
          double uhi = src.uhi + std::log2(a + static_cast<double>(src.rhi)) +
                       1e-9;
          if (ulo > u_top) break;  // deeper digits only grow u
          double rlo = 1.0 / (a + static_cast<double>(src.rhi)) - 1e-12;
          double rhi = 1.0 / (a + static_cast<double>(src.rlo)) + 1e-12;
          int ju = static_cast<int>(ulo / du);
          int jr = static_cast<int>(std::max(0.0, rlo) / dr);
          if (ju >= nu) break;
          if (jr >= nr) jr = nr - 1;
          HullBucket& dst = at(nxt, ju, jr);
          if (dst.cnt == 0.0) {
            dst.ulo = static_cast<float>(ulo);
            dst.uhi = static_cast<float>(uhi);
            dst.rlo = static_cast<float>(std::max(0.0, rlo));
            dst.rhi = static_cast<float>(rhi);
          } else {
            dst.ulo = std::min(dst.ulo, static_cast<float>(ulo));
            dst.uhi = std::max(dst.uhi, static_cast<float>(uhi));
            dst.rlo = std::min(dst.rlo, static_cast<float>(std::max(0.0, rlo)));
            dst.rhi = std::max(dst.rhi, static_cast<float>(rhi));
          }
          dst.cnt += src.cnt;
        }
      }
    }
    cur.swap(nxt);
  }

  BandBoundsCertified bb;
  bb.lower.assign(m_top + 2, 0.0);
  bb.upper.assign(m_top + 2, 0.0);
  for (int iu = 0; iu < nu; ++iu) {
    for (int ir = 0; ir < nr; ++ir) {
      const HullBucket& b = at(cur, iu, ir);
      if (b.cnt == 0.0) continue;
      // band value v = 2u + log2(1+r); v in (m-1, m] means band m.
      double vlo = 2.0 * b.ulo + std::log2(1.0 + static_cast<double>(b.rlo));
      double vhi = 2.0 * b.uhi + std::log2(1.0 + static_cast<double>(b.rhi));
      int m_in = static_cast<int>(std::ceil(vlo - 1e-12));
      // counts toward the certified lower bound only if the whole hull
      // sits inside one band
      if (m_in >= 1 && m_in <= m_top && vhi <= m_in + 1e-12) {
        bb.lower[m_in] += b.cnt * (1.0 - 1e-9);
      }
      int m_first = std::max(1, static_cast<int>(std::ceil(vlo - 1e-12)));
      int m_last =
          std::min(m_top + 1, static_cast<int>(std::ceil(vhi + 1e-12)));
      for (int m = m_first; m <= m_last; ++m) {
        bb.upper[m] += b.cnt * (1.0 + 1e-9);
      }
    }
  }
  return bb;
}

LemmaCheck verify_lemma_np(double theta, double eps, int k, LemmaMode mode,
                           long long digit_cap, int m_scan_max) {
  if (!(theta > 0.0) || !(theta < 1.0)) {
    throw DomainError("theta must lie in (0, 1)");
  }
  if (k < 1) throw DomainError("depth k must be positive");
  LemmaCheck out;

  double log2_thr_slope = theta;        // threshold 2^{(m+1)theta} * extra
  double log2_thr_const = theta;        // from the (m+1) shift
  if (mode == LemmaMode::Full) {
    if (!(theta > 0.5)) throw DomainError("full mode needs theta > 1/2");
    PressureBracket pb = pressure_refine(theta, 1e-3);
    if (!(eps > 0.0) || !(eps < pb.lower)) {
      throw DomainError("eps must lie in (0, P(theta))");
    }
    // the stricter (upper) end of the pressure bracket keeps "found"
    // conservative
    log2_thr_const += (pb.upper - eps) * k * 1.4426950408889634;
  } else {
    if (digit_cap < 2) throw DomainError("restricted mode needs a digit cap");
  }

  int m_top = m_scan_max;
  if (mode == LemmaMode::Restricted) {
    // cover every nonempty band so an all-below scan is conclusive
    m_top = std::max(
        m_top, static_cast<int>(2.0 * k * std::log2(digit_cap + 1.0)) + 3);
  }
  BandBoundsCertified bb = certified_band_bounds(k, digit_cap, m_top);

  bool all_below = true;
  for (int m = 1; m <= m_top; ++m) {
    double thr_log2 = log2_thr_slope * m + log2_thr_const;
    if (!out.found && bb.lower[m] > 0.0 &&
        std::log2(bb.lower[m]) > thr_log2) {
      out.found = true;
      out.m = m;
      out.count_log2 = std::log2(bb.lower[m]);
      out.threshold_log2 = thr_log2;
    }
    if (bb.upper[m] > 0.0 && std::log2(bb.upper[m]) > thr_log2) {
      all_below = false;
    }
  }
  if (mode == LemmaMode::Restricted && !out.found && all_below) {
    out.refuted = true;
       out.note = "every band certifiably below the threshold at this depth";
  } else if (!out.found) {
    out.note =
        "no band certified above the threshold on the scanned range; the "
        "statement is asymptotic in k";
  }
  return out;
}

// ---- cover construction ----------------------------------------------------

namespace {

// Log-scale continuant pair for a digit stream given by log a_n.
struct LogContinuant {
  double lq = 0.0;       // log q_n
  double lq_prev = -std::numeric_limits<double>::infinity();

  void push_log_digit(double la) {
    double nl = logaddexp(la + lq, lq_prev);
    lq_prev = lq;
    lq = nl;
  }
  double log_len() const {  // log |I_n| = -log(q_n (q_n + q_{n-1}))
    return -(lq + logaddexp(lq, lq_prev));
  }
};

}  // namespace

std::vector<CoverLevel> build_cover(const SequenceTriple& t,
                                    long long digit_bound, int levels,
                                    CoverScheme scheme, BlockParams params) {
  if (levels < 2) throw DomainError("need at least two cover levels");
  if (digit_bound < 1) throw DomainError("digit bound must be positive");

  if (scheme == CoverScheme::Block) {
    // Band-construction model: every level appends a length-k0 block
    // taken from dyadic band m0. Geometry follows the distortion bounds
    // |I(uv)| <= 2|I(u)||I(v)| and |I(uv)| >= |I(u)||I(v)|/2, and the
    // digit bound a_i <= 2^{(m0+1)/2} inside a band-m0 block.
    int k0 = params.k0, m0 = params.m0;
    std::uint64_t n0 = 0;
    if (k0 <= 0 || m0 <= 0) {
      for (k0 = 2; k0 <= 6 && n0 < 2; ++k0) {
        DyadicBandCount bc = band_counts(k0, 24, 0);
        for (auto& [m, c] : bc.table) {
          if (c >= 2 && (n0 == 0 || c > n0)) {
            n0 = c;
            m0 = m;
          }
        }
        if (n0 >= 2) break;
      }
      if (n0 < 2) throw DomainError("no usable band found for block scheme");
    } else {
      DyadicBandCount bc = band_counts(k0, m0 + 1, 0);
      auto it = bc.table.find(m0);
      n0 = it == bc.table.end() ? 0 : it->second;
      if (n0 < 2) throw DomainError("band (k0, m0) has fewer than 2 words");
    }
    const double l2 = std::log(2.0);
    double log_m = std::log(static_cast<double>(n0));
    double max_digit_log = 0.5 * (m0 + 1) * l2;
    std::vector<CoverLevel> out;
    double tot = 0.0;
    for (int kk = 1; kk <= levels; ++kk) {
      tot += log_m;
      CoverLevel lv;
      lv.level = kk;
      lv.log_children = log_m;
      lv.log_total_count = tot;
      lv.log_max_diameter = kk * (-(m0 - 2) * l2);
      // min length >= (2^{-m0}/2)^k; sibling gap >= min length over the
      // omitted next digit: / (max digit + 1), one distortion halving
      lv.log_min_gap = kk * (-(m0 + 1) * l2) -
                       logaddexp(max_digit_log, 0.0) - l2;
      out.push_back(lv);
    }
    return out;
  }

  // Natural scheme. Level k lives at depth n_k: free digits in
  // [1, digit_bound] off the marked indices, digit in (s_k, s_k+t_k] at
  // n_k. All geometry in log scale via extreme digit words.
  const double lM = std::log(static_cast<double>(digit_bound));
  LogContinuant wide;   // minimal digits -> longest cylinder
  LogContinuant tight;  // maximal digits -> shortest cylinder
  std::vector<CoverLevel> out;
  double n_prev = 0.0, tot = 0.0;
  for (int kk = 1; kk <= levels; ++kk) {
    double nk = std::floor(std::exp(t.log_n(kk)) + 0.5);
    if (!(nk > n_prev)) throw DomainError("indices n_k must increase");
    if (nk - n_prev > 2e6) throw BudgetError("cover level too deep");
    double ls = t.log_s(kk), lt = t.log_t(kk);
    if (!std::isfinite(ls) || !std::isfinite(lt)) {
      throw BudgetError("sequence overflows the cover horizon");
    }
    // digit window (s_k, s_k + t_k]
    double d_lo_log, d_hi_log, d_count_log;
    double s = std::exp(ls), tt = std::exp(lt);
    if (s + tt < 9e15) {
      double lo = std::floor(s) + 1.0, hi = std::floor(s + tt);
      if (hi - lo + 1.0 < 2.0) {
        throw DomainError("digit window narrower than 2 at level " +
                          std::to_string(kk));
      }
      d_lo_log = std::log(lo);
      d_hi_log = std::log(hi);
      d_count_log = std::log(hi - lo + 1.0);
    } else {
      if (std::exp(lt) < 2.0 && lt < 1.0) {
        throw DomainError("digit window narrower than 2 at level " +
                          std::to_string(kk));
      }
      d_lo_log = ls;
      d_hi_log = logaddexp(ls, lt);
      d_count_log = lt;  // floor(s+t) - floor(s) = t up to +-1
    }

    long long free_run = static_cast<long long>(nk - n_prev) - 1;
    for (long long j = 0; j < free_run; ++j) {
      wide.push_log_digit(0.0);  // digit 1
      tight.push_log_digit(lM);
    }
    wide.push_log_digit(d_lo_log);
    tight.push_log_digit(d_hi_log);

    CoverLevel lv;
    lv.level = kk;
    lv.log_children = d_count_log + free_run * lM;
    tot += lv.log_children;
    lv.log_total_count = tot;
    lv.log_max_diameter = wide.log_len();
    // gap to the adjacent sibling: omitted digits beyond the next
    // position's window leave a hole of at least
    // |I|_min / (next max digit + 1)
    double next_max_digit_log;
    double nk1 = std::floor(std::exp(t.log_n(kk + 1)) + 0.5);
    if (nk1 > nk + 0.5 && nk1 - nk > 1.5) {
      next_max_digit_log = lM;  // free position follows
    } else {
      double ls1 = t.log_s(kk + 1), lt1 = t.log_t(kk + 1);
      next_max_digit_log = std::isfinite(ls1) && std::isfinite(lt1)
                               ? logaddexp(ls1, lt1)
                               : lM;
    }
    lv.log_min_gap = tight.log_len() - logaddexp(next_max_digit_log, 0.0);
    out.push_back(lv);
    n_prev = nk;
  }
  return out;
}

// ---- covers of the bounded-digit sets --------------------------------------

namespace {

struct StopStats {
  std::uint64_t count = 0;
  u128 max_D = 0;        // shortest stopping cylinder (largest D)
  u128 min_D = ~u128(0); // longest stopping cylinder
  int max_len = 0;
  u128 max_child_D = 0;  // deepest one-digit extension
};

// Enumerate maximal words over digits <= M with q(q+q') still <= 2^m at
// the parent; the first word crossing the scale (or hitting the depth
// cap) becomes a cover element.
void stop_dfs(long long M, u128 limit, int depth_cap, int depth,
              std::uint64_t q, std::uint64_t q_prev, StopStats& st) {
  for (long long a = 1; a <= M; ++a) {
    u128 qn = static_cast<u128>(a) * q + q_prev;
    u128 D = qn * (qn + q);
    if (D > limit || depth == depth_cap) {
      ++st.count;
      st.max_D = std::max(st.max_D, D);
      st.min_D = std::min(st.min_D, D);
      st.max_len = std::max(st.max_len, depth);
      // deepest child for the two-level lower-bound construction
      u128 qc = static_cast<u128>(M) * static_cast<std::uint64_t>(qn) +
                q;
      st.max_child_D = std::max(st.max_child_D, qc * (qc + qn));
    } else {
      stop_dfs(M, limit, depth_cap, depth + 1,
               static_cast<std::uint64_t>(qn), q, st);
    }
  }
}

double log_u128(u128 v) {
  double hi = static_cast<double>(static_cast<std::uint64_t>(v >> 64));
  double lo = static_cast<double>(static_cast<std::uint64_t>(v));
  return std::log(hi * 1.8446744073709552e19 + lo);
}

}  // namespace

std::vector<CoverLevel> bounded_digit_cover(long long M,
                                            const std::vector<int>& m_scales,
                                            int depth_cap) {
  if (M < 2) throw DomainError("digit cap must be at least 2");
  if (depth_cap < 1 || m_scales.empty()) {
    throw DomainError("need a positive depth cap and at least one scale");
  }
  std::vector<CoverLevel> out;
  int idx = 0;
  for (int m : m_scales) {
    if (m < 1 || m > 100) throw DomainError("scales must lie in [1, 100]");
    StopStats st;
    stop_dfs(M, u128(1) << m, depth_cap, 1, 1, 0, st);
    CoverLevel lv;
    lv.level = ++idx;
    lv.log_total_count = std::log(static_cast<double>(st.count));
    lv.log_max_diameter = -log_u128(st.min_D);
    lv.log_children = std::log(static_cast<double>(M));
    lv.log_min_gap = -log_u128(st.max_D) - std::log(M + 1.0);
    out.push_back(lv);
  }
  return out;
}

std::vector<CoverLevel> bounded_digit_falconer_levels(long long M,
                                                      int depth_cap) {
  if (M < 2) throw DomainError("digit cap must be at least 2");
  if (depth_cap < 4) throw DomainError("depth cap too small");
  // Largest scale whose stopping words all leave room for one more digit.
  int best_m = 0;
  StopStats best;
  for (int m = 4; m <= 2 * depth_cap; ++m) {
    StopStats st;
    stop_dfs(M, u128(1) << m, depth_cap, 1, 1, 0, st);
    if (st.max_len <= depth_cap - 1) {
      best_m = m;
      best = st;
    } else {
      break;
    }
  }
  if (best_m == 0) throw DomainError("no stopping scale fits the depth cap");

  // Two-level nested family: level 1 = all stopping words (children of
  // the root, separated by the omitted digit tails), level 2 = the
  // one-digit splits of each word.
  std::vector<CoverLevel> out(2);
  out[0].level = 1;
  out[0].log_children = std::log(static_cast<double>(best.count));
  out[0].log_total_count = out[0].log_children;
  out[0].log_max_diameter = -log_u128(best.min_D);
  out[0].log_min_gap = -log_u128(best.max_D) - std::log(M + 1.0);
  out[1].level = 2;
  out[1].log_children = std::log(static_cast<double>(M));
  out[1].log_total_count =
      out[0].log_total_count + out[1].log_children;
  out[1].log_max_diameter = -log_u128(best.max_D);  // child of longest
  out[1].log_min_gap = -log_u128(best.max_child_D) - std::log(M + 1.0);
  return out;
}

// ---- estimators -------------------------------------------------------------

EstimateTrace falconer_estimate(const std::vector<CoverLevel>& levels) {
  if (levels.size() < 2) {
    throw DomainError("lower-bound estimate needs at least two levels");
  }
  constexpr double l2 = 0.6931471805599453;
  double prefix = 0.0;
  EstimateTrace out;
  for (size_t i = 0; i + 1 < levels.size(); ++i) {
    if (levels[i].log_children < l2 - 1e-9) {
      throw DomainError("every parent needs at least two children");
    }
    if (i > 0 && levels[i].log_min_gap > levels[i - 1].log_min_gap + 1e-9) {
      throw DomainError("gaps must decrease along the levels");
    }
    prefix += levels[i].log_children;
    const CoverLevel& nxt = levels[i + 1];
    double denom = -(nxt.log_children + nxt.log_min_gap);
    if (!(denom > 0.0)) throw DomainError("degenerate gap geometry");
    out.trace.push_back(prefix / denom);
  }
  size_t tail = out.trace.size() - out.trace.size() / 4 - 1;
  out.value = out.trace.back();
  for (size_t i = tail; i < out.trace.size(); ++i) {
    out.value = std::min(out.value, out.trace[i]);
  }
  return out;
}

EstimateTrace covering_estimate(const std::vector<CoverLevel>& levels) {
  if (levels.empty()) throw DomainError("no cover levels");
  EstimateTrace out;
  for (size_t i = 0; i < levels.size(); ++i) {
    if (i > 0 &&
        levels[i].log_max_diameter >= levels[i - 1].log_max_diameter) {
      out.shrinking = false;
    }
    double denom = -levels[i].log_max_diameter;
    if (!(denom > 0.0)) throw DomainError("cover diameter not below 1");
    out.trace.push_back(levels[i].log_total_count / denom);
  }
  size_t tail = out.trace.size() - out.trace.size() / 4 - 1;
  out.value = out.trace.back();
  for (size_t i = tail; i < out.trace.size(); ++i) {
    out.value = std::min(out.value, out.trace[i]);
  }
  return out;
}

// ---- Wang-Wu oracle ----------------------------------------------------------

namespace {

// f_n(rho, B) two-sided, on digits <= A plus the certified tail
//   sum_{some a_i > A} q_n^{-2 rho} <= n zeta(2 rho)^{n-1} A^{1-2rho}/(2rho-1).
struct FnBracket {
  double lo, hi, tail;
};

FnBracket f_n_bracket(double rho, double B, int n, double A) {
  double logS = restricted_log_sum(rho, A, n);
  double shift = -n * rho * std::log(B);
  double zeta = zeta_upper(2.0 * rho);
  double tail_log = std::log(static_cast<double>(n)) +
                    (n - 1) * std::log(zeta) +
                    (1.0 - 2.0 * rho) * std::log(A) -
                    std::log(2.0 * rho - 1.0);
  FnBracket fb;
  fb.lo = std::exp(logS + shift) * (1.0 - 1e-9);
  fb.hi = std::exp(logS + shift) * (1.0 + 1e-9) + std::exp(tail_log + shift);
  fb.tail = std::exp(tail_log + shift);
  return fb;
}

}  // namespace

WangWuResult wang_wu_s_n(double B, int n, double digit_truncation,
                         double rho_tol) {
  if (!(B > 1.0)) throw DomainError("base B must exceed 1");
  if (n < 1) throw DomainError("depth n must be positive");
  if (digit_truncation < 1e3) {
    throw DomainError("digit truncation too small for a useful tail bound");
  }
  WangWuResult out;
  out.n = n;
  double lo = 0.5, hi = 1.5;  // f(1/2+) = inf; check the right end
  {
    FnBracket fb = f_n_bracket(hi, B, n, digit_truncation);
    out.tail_bound = fb.tail;
    if (!(fb.hi < 1.0)) {
      throw DomainError(
          "f_n not certifiably below 1 at rho = 1.5; increase the digit "
          "truncation");
    }
  }
  while (hi - lo > rho_tol) {
    double mid = 0.5 * (lo + hi);
    FnBracket fb = f_n_bracket(mid, B, n, digit_truncation);
    out.tail_bound = std::max(out.tail_bound, fb.tail);
    if (fb.hi < 1.0) {
      hi = mid;  // f certifiably below 1: inf is further left
    } else if (fb.lo >= 1.0) {
      lo = mid;
    } else {
      break;  // bracket straddles 1; tail or rounding dominates
    }
  }
  out.lo = lo;
  out.hi = hi;
  return out;
}

// ---- box counting ------------------------------------------------------------

BoxCountResult boxcount_sample(long long digit_cap, int count, int depth,
                               const std::vector<double>& scales,
                               std::uint64_t seed) {
  if (digit_cap < 1) throw DomainError("digit cap must be positive");
  if (count < 1 || depth < 1 || scales.empty()) {
    throw DomainError("need positive sample count, depth and scales");
  }
  // resolution floor: the shortest depth-`depth` cylinder
  LogContinuant tight;
  for (int i = 0; i < depth; ++i) {
    tight.push_log_digit(std::log(static_cast<double>(digit_cap)));
  }
  double log_res = tight.log_len();
  for (double d : scales) {
    if (!(d > 0.0) || std::log(d) < log_res) {
      throw DomainError("scale finer than the sampling resolution");
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> dig(1, digit_cap);
  std::vector<double> xs(static_cast<size_t>(count));
  std::vector<long long> word(static_cast<size_t>(depth));
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < depth; ++j) word[j] = dig(rng);
    double x = 0.0;  // backward evaluation is numerically stable
    for (int j = depth - 1; j >= 0; --j) x = 1.0 / (word[j] + x);
    xs[i] = x;
  }

  BoxCountResult out;
  std::vector<std::int64_t> boxes(xs.size());
  for (double d : scales) {
    for (size_t i = 0; i < xs.size(); ++i) {
      boxes[i] = static_cast<std::int64_t>(xs[i] / d);
    }
    std::sort(boxes.begin(), boxes.end());
    auto n_occ = std::unique(boxes.begin(), boxes.end()) - boxes.begin();
    out.points.emplace_back(-std::log(d), std::log(static_cast<double>(n_occ)));
  }
  // least-squares slope of log N against -log delta
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : out.points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double nn = static_cast<double>(out.points.size());
  out.slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  return out;
}

}  // namespace cfdim
