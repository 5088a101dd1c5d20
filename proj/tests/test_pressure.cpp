#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cfdim/pressure.hpp"

using namespace cfdim;

namespace {

// single-digit alphabet {1}: the only depth-n word is (1..1), q_n = F_{n+1},
// so P_1(theta) = -2 theta log phi with phi the golden ratio.
double fibonacci_pressure(double theta) {
  return -2.0 * theta * std::log((1.0 + std::sqrt(5.0)) / 2.0);
}

}  // namespace

TEST_CASE("restricted pressure matches the golden-ratio closed form") {
  for (double theta : {0.6, 0.8, 1.0}) {
    auto b = pressure_restricted(theta, 1.0, 64);
    double exact = fibonacci_pressure(theta);
    CHECK(b.lower <= exact);
    CHECK(b.upper >= exact);
    CHECK(b.width() < 0.05);
  }
}

TEST_CASE("restricted_log_sum agrees between enumeration and iteration") {
  for (double theta : {0.7, 1.0}) {
    double by_enum =
        restricted_log_sum(theta, 5.0, 10, PressureMethod::Enumerate);
    double by_iter =
        restricted_log_sum(theta, 5.0, 10, PressureMethod::OperatorIteration);
    CHECK(by_enum == doctest::Approx(by_iter).epsilon(1e-5));
  }
}

TEST_CASE("partition identity forces P(1) = 0") {
  auto b = pressure_refine(1.0, 0.02);
  CHECK(b.lower <= 0.0);
  CHECK(b.upper >= 0.0);
  CHECK(b.width() <= 0.02 * 1.0001);
}

TEST_CASE("refined pressure values at sample exponents") {
  // frozen from depth/digit-bound sweeps of the subadditive bracket
  struct {
    double theta, value;
  } samples[] = {{0.6, 1.6728}, {0.7, 0.98976}, {0.8, 0.57111},
                 {0.9, 0.25735}};
  for (auto s : samples) {
    auto b = pressure_refine(s.theta, 5e-3);
    CHECK(b.converged);
    CHECK(b.lower <= s.value + 5e-4);
    CHECK(b.upper >= s.value - 5e-4);
  }
}

TEST_CASE("pressure is strictly decreasing in theta") {
  auto b1 = pressure_refine(0.65, 1e-3);
  auto b2 = pressure_refine(0.75, 1e-3);
  auto b3 = pressure_refine(0.95, 1e-3);
  CHECK(b1.lower > b2.upper);
  CHECK(b2.lower > b3.upper);
}

TEST_CASE("restricted pressure increases with the digit bound") {
  double p2 = pressure_restricted(0.8, 2.0, 48).midpoint();
  double p8 = pressure_restricted(0.8, 8.0, 48).midpoint();
  double p64 = pressure_restricted(0.8, 64.0, 48).midpoint();
  CHECK(p2 < p8);
  CHECK(p8 < p64);
}

TEST_CASE("digit-tail bound is positive, decreasing in M, vanishing") {
  double d10 = tail_delta(0.8, 10.0);
  double d100 = tail_delta(0.8, 100.0);
  double d1e6 = tail_delta(0.8, 1e6);
  CHECK(d10 > d100);
  CHECK(d100 > d1e6);
  CHECK(d1e6 < 2e-3);
  CHECK(d1e6 > 0.0);
  // closed-form sanity at theta = 1: sum_{j>M} (2/j)^2 ~ 4/M
  CHECK(tail_delta(1.0, 1000.0) == doctest::Approx(4.0 / 1000.0).epsilon(0.01));
}

TEST_CASE("zeta upper bound dominates the true zeta") {
  CHECK(zeta_upper(2.0) >= 1.6449340668);
  CHECK(zeta_upper(2.0) < 1.66);
  CHECK(zeta_upper(1.2) >= 5.59158);
  CHECK(zeta_upper(1.2) < 6.0);
}

TEST_CASE("full bracket sandwiches the restricted one plus tail") {
  auto r = pressure_restricted(0.8, 50.0, 32);
  auto f = pressure_full(0.8, 50.0, 32);
  CHECK(f.lower <= r.lower + 1e-12);     // P >= P_M lower bound kept
  CHECK(f.upper >= r.upper - 1e-12);     // tail can only raise the cap
  CHECK(f.upper <= r.upper + tail_delta(0.8, 50.0) + 1e-12);
  CHECK(f.upper <= std::log(zeta_upper(1.6)) + 1e-12);
}

TEST_CASE("bracket width shrinks with depth") {
  auto shallow = pressure_restricted(0.7, 10.0, 8);
  auto deep = pressure_restricted(0.7, 10.0, 128);
  CHECK(deep.width() < shallow.width());
  CHECK(deep.lower >= shallow.lower - 1e-9);
  CHECK(deep.upper <= shallow.upper + 1e-9);
}

TEST_CASE("refine cache is shared and clearable") {
  pressure_cache_clear();
  CHECK(pressure_cache_size() == 0);
  pressure_refine(0.77, 1e-2);
  auto n1 = pressure_cache_size();
  CHECK(n1 >= 1);
  pressure_refine(0.77, 1e-2);  // hit
  CHECK(pressure_cache_size() == n1);
  pressure_cache_clear();
  CHECK(pressure_cache_size() == 0);
}

TEST_CASE("unreachable tolerance returns a non-converged bracket") {
  RefineBudget tiny;
  tiny.digit_bound_max = 8;
  tiny.depth_max = 16;
  auto b = pressure_refine(0.8, 1e-9, tiny);
  CHECK_FALSE(b.converged);
  CHECK(b.lower < b.upper);
  // still a valid enclosure of the true value near 0.57111
  CHECK(b.lower <= 0.5712);
  CHECK(b.upper >= 0.5710);
}

TEST_CASE("enumeration node cap raises a budget error") {
  PressureOptions po;
  po.enum_node_cap = 100;
  CHECK_THROWS_AS(
      restricted_log_sum(0.8, 100.0, 12, PressureMethod::Enumerate, po),
      BudgetError);
}

TEST_CASE("theta at or below 1/2 is out of domain for the full pressure") {
  CHECK_THROWS_AS(pressure_refine(0.5, 1e-2), DomainError);
  CHECK_THROWS_AS(pressure_full(0.45, 100.0, 16), DomainError);
}
