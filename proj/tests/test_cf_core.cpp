#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cfdim/cf_core.hpp"

using namespace cfdim;

namespace {

DigitWord word(std::initializer_list<long long> ds) {
  DigitWord w;
  for (auto d : ds) w.emplace_back(d);
  return w;
}

}  // namespace

TEST_CASE("continuants of all-ones words are Fibonacci numbers") {
  // q_n(1,...,1) = F_{n+1} with F_1 = F_2 = 1
  long long fib[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  DigitWord w;
  for (int n = 1; n <= 10; ++n) {
    w.emplace_back(1);
    auto c = continuants(w);
    CHECK(c.q_cur == BigInt(fib[n]));
    CHECK(c.q_prev == BigInt(fib[n - 1]));
  }
}

TEST_CASE("continuant seeds: empty word gives q = 1") {
  auto c = continuants({});
  CHECK(c.q_cur == 1);
  CHECK(c.q_prev == 0);
  CHECK(c.p_cur == 0);
  CHECK(c.p_prev == 1);
}

TEST_CASE("cylinder of the single digit 1 is [1/2, 1]") {
  auto cyl = cylinder(word({1}));
  CHECK(cyl.lo == BigRat(1, 2));
  CHECK(cyl.hi == BigRat(1));
  CHECK(cyl.length == BigRat(1, 2));
}

TEST_CASE("cylinder of the single digit 2 is [1/3, 1/2]") {
  auto cyl = cylinder(word({2}));
  CHECK(cyl.lo == BigRat(1, 3));
  CHECK(cyl.hi == BigRat(1, 2));
  CHECK(cyl.length == BigRat(1, 6));
}

TEST_CASE("cylinder length equals 1/(q(q+q'))") {
  auto cyl = cylinder(word({3, 1, 4, 1, 5}));
  auto c = continuants(word({3, 1, 4, 1, 5}));
  BigRat expect(BigInt(1), c.q_cur * (c.q_cur + c.q_prev));
  CHECK(cyl.length == expect);
  CHECK(cyl.hi - cyl.lo == expect);
}

TEST_CASE("digit expansion of sqrt(2)-1 is all twos") {
  auto e = digit_expansion(std::sqrt(2.0) - 1.0, 8);
  REQUIRE(e.digits.size() >= 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(e.digits[i] == 2);
}

TEST_CASE("rational expansion round-trips exactly") {
  BigRat x(355 - 3 * 113, 113);  // frac(355/113)
  auto e = digit_expansion(x, 32);
  CHECK(e.terminated);
  CHECK(cf_value(e.digits) == x);

  BigRat y(617, 4970);
  auto ey = digit_expansion(y, 64);
  CHECK(ey.terminated);
  CHECK(cf_value(ey.digits) == y);
}

TEST_CASE("expansion of a reduced fraction never ends in digit 1") {
  // canonical Euclidean expansions: [0; a_1..a_n] with a_n >= 2 (or n == 1)
  auto e = digit_expansion(BigRat(2, 5), 16);
  REQUIRE(e.terminated);
  CHECK(e.digits.back() >= 2);
}

TEST_CASE("word_stats counts digits above a threshold") {
  auto st = word_stats(word({1, 7, 3, 9, 2}), BigInt(3));
  CHECK(st.max_digit == 9);
  CHECK(st.count_above == 2);
  CHECK(st.log_digit_sum ==
        doctest::Approx(std::log(1.0) + std::log(7.0) + std::log(3.0) +
                        std::log(9.0) + std::log(2.0)));
}

TEST_CASE("random-word invariant suite (exact rationals)") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> len_dist(1, 12);
  std::uniform_int_distribution<long long> digit_dist(1, 50);

  int checked = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    int n = len_dist(rng);
    DigitWord w(n);
    BigInt prod = 1;
    for (auto& d : w) {
      d = digit_dist(rng);
      prod *= d;
    }
    auto c = continuants(w);
    auto cyl = cylinder(w);

    // unimodularity: p_n q_{n-1} - p_{n-1} q_n = (-1)^{n-1}
    BigInt det = c.p_cur * c.q_prev - c.p_prev * c.q_cur;
    CHECK(det == (n % 2 == 1 ? 1 : -1));

    // digit-product bounds: prod a_i <= q_n < 2^n prod a_i
    CHECK(c.q_cur >= prod);
    CHECK(c.q_cur < (BigInt(1) << n) * prod);

    // distortion: q^2 |I| in [1/2, 1] (so |I| vs 1/q^2 within factor 2)
    BigRat distortion = cyl.length * c.q_cur * c.q_cur;
    CHECK(distortion >= BigRat(1, 2));
    CHECK(distortion <= BigRat(1));

    // interval is inside (0,1] and consistent
    CHECK(cyl.lo > 0);
    CHECK(cyl.hi <= 1);
    CHECK(cyl.length == cyl.hi - cyl.lo);
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("depth-n cylinders partition (0,1): lengths sum to 1") {
  // sum over all words of length 2 with digits <= A of |I| plus the
  // remainder from digits > A telescopes; check the exact identity at
  // depth 1: sum_a 1/(a(a+1)) = 1, truncated tail = 1/(A+1).
  BigRat total = 0;
  const long long A = 400;
  for (long long a = 1; a <= A; ++a) total += cylinder(word({a})).length;
  CHECK(total == 1 - BigRat(1, A + 1));

  // depth 2 under digit cap 3: the union of I(a,b), b <= 3, inside I(a)
  // leaves exactly the b > 3 part; verify nesting and disjointness.
  for (long long a = 1; a <= 3; ++a) {
    auto outer = cylinder(word({a}));
    BigRat inner_total = 0;
    for (long long b = 1; b <= 400; ++b) {
      auto in = cylinder(word({a, b}));
      CHECK(in.lo >= outer.lo);
      CHECK(in.hi <= outer.hi);
      inner_total += in.length;
    }
    CHECK(inner_total < outer.length);
    CHECK(outer.length - inner_total < BigRat(1, 100));
  }
}

TEST_CASE("log_big matches double log on representable values") {
  CHECK(log_big(BigInt(1)) == doctest::Approx(0.0));
  CHECK(log_big(BigInt(1) << 200) == doctest::Approx(200 * std::log(2.0)));
  BigInt big = 1;
  for (int i = 0; i < 50; ++i) big *= 97;
  CHECK(log_big(big) == doctest::Approx(50 * std::log(97.0)).epsilon(1e-12));
}

TEST_CASE("cf_value inverts continuants: value = p/q") {
  auto w = word({2, 6, 1, 4});
  auto c = continuants(w);
  CHECK(cf_value(w) == BigRat(c.p_cur, c.q_cur));
}

TEST_CASE("digit_expansion rejects values outside (0,1)") {
  CHECK_THROWS_AS(digit_expansion(1.5, 8), DomainError);
  CHECK_THROWS_AS(digit_expansion(BigRat(3, 2), 8), DomainError);
}
