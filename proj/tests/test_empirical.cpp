#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cfdim/empirical.hpp"

using namespace cfdim;

TEST_CASE("band table for words of length 2 with digits <= 2") {
  // cylinders: (1,1) len 1/6 -> band 3; (1,2),(2,1) len 1/15, 1/12 -> 4;
  // (2,2) len 1/30 -> 5 (1/30 in [2^-5, 2^-4)); lengths from q(q+q')
  auto bc = band_counts(2, 8, 2);
  CHECK(bc.total == 4);
  CHECK(bc.table.at(3) == 1);
  CHECK(bc.table.at(4) == 2);
  // the remaining word falls one band further down
  std::uint64_t rest = 0;
  for (const auto& [m, c] : bc.table)
    if (m > 4) rest += c;
  CHECK(rest == 1);
}

TEST_CASE("band table boundary: the single length-1 cap-1 word") {
  // I(1) = [1/2, 1] has length exactly 2^-1: boundary goes to the lower band
  auto bc = band_counts(1, 4, 1);
  CHECK(bc.total == 1);
  CHECK(bc.table.at(1) == 1);
}

TEST_CASE("restricted band tables partition the full word count") {
  // every digit-cap word eventually lands in some band: totals are M^k
  for (long long M : {2LL, 3LL}) {
    auto bc = band_counts(4, 40, M);
    std::uint64_t all = 1;
    for (int i = 0; i < 4; ++i) all *= static_cast<std::uint64_t>(M);
    CHECK(bc.total == all);
  }
}

TEST_CASE("unbounded-alphabet band counts at a frozen reference") {
  // length-8 words whose cylinder length falls in [2^-24, 2^-23)
  auto bc = band_counts(8, 24);
  CHECK(bc.table.at(24) == 676834);
  CHECK(bc.table.at(23) == 331067);
  CHECK(bc.total == 1295526);
}

TEST_CASE("hull-certified band bounds bracket the exact counts") {
  auto bb = certified_band_bounds(8, 0, 26, 512);
  auto bc = band_counts(8, 26);
  double cum_exact = 0, cum_lo = 0, cum_hi = 0;
  for (int m = 1; m <= 26; ++m) {
    auto it = bc.table.find(m);
    double exact = it == bc.table.end() ? 0.0 : double(it->second);
    CHECK(bb.lower[m] <= exact * (1 + 1e-9) + 1e-9);
    CHECK(bb.upper[m] >= exact * (1 - 1e-9) - 1e-9);
    cum_exact += exact;
    cum_lo += bb.lower[m];
    cum_hi += bb.upper[m];
  }
  // the hulls are tight: within a quarter bit cumulatively
  CHECK(cum_lo > cum_exact * 0.8);
  CHECK(cum_hi < cum_exact * 1.25);
}

TEST_CASE("restricted lemma scan certifies a band for digits <= 2") {
  // threshold 2^{(m+1)theta} with theta = 0.4: at k = 20 the 2^20 words
  // concentrate enough mass in one band
  auto lc = verify_lemma_np(0.4, 0.0, 20, LemmaMode::Restricted, 2);
  CHECK(lc.found);
  CHECK(lc.count_log2 > lc.threshold_log2);
  CHECK(lc.m > 0);
}

TEST_CASE("restricted lemma scan refutes an impossible threshold") {
  // theta = 0.9 demands 2^{0.9(m+1)} words in one band; with digit cap 2
  // there are only 2^k words total spread over ~k bands
  auto lc = verify_lemma_np(0.9, 0.0, 30, LemmaMode::Restricted, 2);
  CHECK_FALSE(lc.found);
  CHECK(lc.refuted);
}

TEST_CASE("lemma checks validate their inputs") {
  CHECK_THROWS_AS(verify_lemma_np(0.45, 0.1, 8), DomainError);  // theta <= 1/2
  CHECK_THROWS_AS(verify_lemma_np(0.6, 5.0, 8), DomainError);   // eps >= P
  CHECK_THROWS_AS(verify_lemma_np(0.6, 0.1, 8, LemmaMode::Restricted, 0),
                  DomainError);  // restricted needs a digit cap
}

TEST_CASE("stopping-scale covers of the golden-ratio set shrink correctly") {
  std::vector<int> scales{4, 7, 10, 13};
  auto cover = bounded_digit_cover(2, scales, 12);
  REQUIRE(cover.size() == scales.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    CHECK(cover[i].log_total_count > 0.0);
    // stopped words have length in (2^-m-ish, 2^-(m-1)-ish]: diameter caps
    CHECK(cover[i].log_max_diameter <=
          -(scales[i] - 1) * std::log(2.0) + 1e-9);
    if (i > 0) {
      CHECK(cover[i].log_total_count > cover[i - 1].log_total_count);
      CHECK(cover[i].log_max_diameter < cover[i - 1].log_max_diameter);
    }
  }
  auto est = covering_estimate(cover);
  CHECK(est.shrinking);
  CHECK(est.value > 0.4);
  CHECK(est.value < 0.7);
}

TEST_CASE("covering estimate of F_2 approaches its dimension from above") {
  std::vector<int> scales{4, 7, 10, 13, 16, 19};
  auto est = covering_estimate(bounded_digit_cover(2, scales, 14));
  // dim F_2 = 0.53128...; the finite-scale covering exponent sits above it
  CHECK(est.value > 0.53128);
  CHECK(est.value < 0.60);
  // and the trace is still descending toward it
  CHECK(est.trace.front() > est.trace.back());
}

TEST_CASE("falconer lower estimate stays below the covering estimate") {
  auto fal = falconer_estimate(bounded_digit_falconer_levels(2, 14));
  std::vector<int> scales{4, 7, 10, 13, 16, 19};
  auto cov = covering_estimate(bounded_digit_cover(2, scales, 14));
  CHECK(fal.value > 0.0);
  CHECK(fal.value <= cov.value);
  // a genuine lower bound for a set of dimension 0.53128...
  CHECK(fal.value < 0.53129);
}

TEST_CASE("natural cover of a doubly exponential target set") {
  SequenceTriple t;
  t.log_n = seq_from_expression("2^(k^2)");
  t.log_s = seq_from_expression("2^(2^(k^2))");
  t.log_t = t.log_s;
  // free digits bounded by 2 keep the per-level diameters comparable,
  // so the coarse max-diameter covering exponent stays meaningful
  auto levels = build_cover(t, 2, 4, CoverScheme::Natural);
  REQUIRE(levels.size() >= 4);
  auto fal = falconer_estimate(levels);
  auto cov = covering_estimate(levels);
  CHECK(fal.value > 0.0);
  CHECK(fal.value <= cov.value + 1e-9);
  CHECK(cov.value < 1.0);
}

TEST_CASE("block cover discovers a workable band") {
  SequenceTriple t;
  t.log_n = seq_from_expression("4^k");
  t.log_s = seq_from_expression("2^(4^k)");
  t.log_t = t.log_s;
  auto levels = build_cover(t, 8, 5, CoverScheme::Block);
  REQUIRE(levels.size() >= 2);
  for (const auto& lv : levels) CHECK(lv.log_children >= std::log(2.0));
}

TEST_CASE("wang-wu oracle brackets decrease in n and match references") {
  auto s4 = wang_wu_s_n(2.0, 4);
  auto s6 = wang_wu_s_n(2.0, 6);
  CHECK(s6.lo <= s6.hi);
  // frozen reference: s_6(2) ~ [0.8122, 0.8124]
  CHECK(s6.lo > 0.805);
  CHECK(s6.hi < 0.820);
  // the finite-level exponents decrease toward theta(log 2) = 0.80394
  CHECK(s6.hi < s4.hi);

  auto big = wang_wu_s_n(1e6, 4);
  CHECK(big.lo >= 0.5);
  CHECK(big.hi < 0.51);
}

TEST_CASE("wang-wu rejects a uselessly small truncation") {
  CHECK_THROWS_AS(wang_wu_s_n(2.0, 6, 10.0), DomainError);
}

TEST_CASE("box-count sampling is deterministic in the seed") {
  std::vector<double> scales{1.0 / 16, 1.0 / 64, 1.0 / 256, 1.0 / 1024};
  auto a = boxcount_sample(2, 4000, 18, scales, 97);
  auto b = boxcount_sample(2, 4000, 18, scales, 97);
  CHECK(a.slope == b.slope);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK(a.points[i].second == b.points[i].second);
  // slope should be loosely near dim F_2
  CHECK(a.slope > 0.4);
  CHECK(a.slope < 0.65);
}

TEST_CASE("box-count slope of a single point is zero") {
  // digit cap 1 pins every sample to the golden-ratio point
  std::vector<double> scales{1.0 / 16, 1.0 / 64};
  auto r = boxcount_sample(1, 500, 18, scales, 3);
  CHECK(r.slope == doctest::Approx(0.0).epsilon(1e-12));
}
