#pragma once

// Brute-force and constructive verification layer: dyadic band counts of
// cylinder lengths, Cantor-type cover construction with Falconer lower /
// covering upper estimators, the Wang-Wu oracle s_n(B), and seeded
// box-counting on sampled points.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cfdim/cf_core.hpp"
#include "cfdim/seq_profile.hpp"

namespace cfdim {

// table[m] = number of length-k words whose cylinder length lies in
// [2^-m, 2^-(m-1)); exact rational boundaries assigned to the lower band.
struct DyadicBandCount {
  int k = 0;
  long long digit_cap = 0;  // 0 = unbounded alphabet
  int m_max = 0;
  std::map<int, std::uint64_t> table;
  std::uint64_t total = 0;  // words counted (cylinder length >= 2^-m_max)
};

DyadicBandCount band_counts(int k, int m_max, long long digit_cap = 0,
                            std::uint64_t node_cap = 400'000'000ULL);

// Scan for the smallest m with a certified band count above the lemma
// threshold: 2^{(m+1)theta} e^{(P(theta)-eps)k} for the unbounded
// alphabet, 2^{(m+1)theta} for the digit-restricted one. Counts are
// certified from below by an interval-hull dynamic program over
// (log2 q, q_{k-1}/q_k) buckets, so "found" is a proof and "refuted"
// (upper bounds below threshold for every m) is one too.
enum class LemmaMode { Full, Restricted };

struct LemmaCheck {
  bool found = false;
  bool refuted = false;  // every band certifiably below threshold
  int m = 0;             // smallest certified m when found
  double count_log2 = 0.0;      // certified lower bound at that m
  double threshold_log2 = 0.0;
  std::string note;
};

LemmaCheck verify_lemma_np(double theta, double eps, int k,
                           LemmaMode mode = LemmaMode::Full,
                           long long digit_cap = 0, int m_scan_max = 130);

// Certified per-band bounds backing verify_lemma_np: lower[m] counts only
// words whose (log2 q, q_{k-1}/q_k) hull sits inside band m, upper[m]
// counts every word whose hull meets it. digit_horizon limits the
// enumerated alphabet in full mode (a lower-bound truncation).
struct BandBoundsCertified {
  std::vector<double> lower, upper;
};

BandBoundsCertified certified_band_bounds(int k, long long digit_cap,
                                          int m_top,
                                          long long digit_horizon = 512);

// One level of a nested cover; geometry carried in natural-log scale so
// that doubly exponential digit sequences stay representable.
struct CoverLevel {
  int level = 0;
  double log_children = 0.0;      // log m_k, min children per parent
  double log_min_gap = 0.0;       // log eps_k
  double log_max_diameter = 0.0;  // log delta_k
  double log_total_count = 0.0;   // log #E_k
};

// Nested cover of E({n_k},{s_k},{t_k}) with free digits bounded by M.
// scheme "natural": depth-n_k cylinders, digit in (s_k, s_k+t_k] at n_k.
// scheme "block": the band-construction model; each level appends a
// normal block of length k0 drawn from dyadic band m0 (discovered from
// band_counts when not supplied).
enum class CoverScheme { Natural, Block };

struct BlockParams {
  int k0 = 0, m0 = 0;  // zero: discover by scanning band counts
};

std::vector<CoverLevel> build_cover(const SequenceTriple& t,
                                    long long digit_bound, int levels,
                                    CoverScheme scheme = CoverScheme::Natural,
                                    BlockParams params = {});

// Covers of the bounded-digit set F_M itself, used to sanity-check the
// estimators against dim_F_N. The covering family stops each word at the
// first depth where its cylinder drops below 2^-m (exact integer
// arithmetic); the lower-bound family is a two-level nested construction:
// all stopping words at one scale, then a one-digit split.
std::vector<CoverLevel> bounded_digit_cover(long long M,
                                            const std::vector<int>& m_scales,
                                            int depth_cap);
std::vector<CoverLevel> bounded_digit_falconer_levels(long long M,
                                                      int depth_cap);

struct EstimateTrace {
  std::vector<double> trace;  // per-level estimate
  double value = 0.0;         // tail infimum (finite-horizon liminf)
  bool shrinking = true;      // diameters observed decreasing
};

// liminf log(m_1...m_{k-1}) / -log(m_k eps_k); needs >= 2 levels,
// m_k >= 2 and decreasing gaps.
EstimateTrace falconer_estimate(const std::vector<CoverLevel>& levels);
// liminf log #E_k / -log delta_k.
EstimateTrace covering_estimate(const std::vector<CoverLevel>& levels);

// Wang-Wu quantity s_n(B) = inf{rho >= 0: f_n(rho,B) < 1} with
// f_n(rho,B) = sum over length-n words of (B^n q_n^2)^-rho, computed on
// digits <= A with a certified zeta-product tail bound.
struct WangWuResult {
  double lo = 0.0, hi = 0.0;
  int n = 0;
  double tail_bound = 0.0;  // largest tail correction met in the search
};

WangWuResult wang_wu_s_n(double B, int n, double digit_truncation = 1e14,
                         double rho_tol = 1e-4);

// Seeded box-count slope over sampled points of the digit_cap set.
struct BoxCountResult {
  double slope = 0.0;
  std::vector<std::pair<double, double>> points;  // (-log delta, log N)
};

BoxCountResult boxcount_sample(long long digit_cap, int count, int depth,
                               const std::vector<double>& scales,
                               std::uint64_t seed);

}  // namespace cfdim
