#pragma once

// Exact continued-fraction primitives: continuants, cylinder intervals,
// Gauss-map digit expansion. All arithmetic is exact (arbitrary-precision
// integers / rationals) so downstream estimators can trust the geometry.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfdim {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using DigitWord = std::vector<BigInt>;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Running (p, q) recurrence state. Seeds: q_{-1} = 0, q_0 = 1,
// p_{-1} = 1, p_0 = 0, so q_n of the empty word is 1.
struct ContinuantPair {
  BigInt p_prev{1}, p_cur{0};
  BigInt q_prev{0}, q_cur{1};

  void push(const BigInt& digit);
};

// Continuant q_n(a_1..a_n) together with q_{n-1} and the numerators.
ContinuantPair continuants(const DigitWord& word);

// Natural log of a positive big integer, accurate to ~1e-15 relative.
double log_big(const BigInt& v);

// Cylinder interval I_n(a_1..a_n): all x in (0,1) whose first n digits
// match the word. Endpoints are p/q and (p+p')/(q+q'); orientation
// depends on the parity of n.
struct CylinderInterval {
  BigRat lo, hi;        // lo < hi
  BigRat length;        // == 1 / (q_n (q_n + q_{n-1}))
  BigInt q, q_prev;
};

CylinderInterval cylinder(const DigitWord& word);

// Gauss-map digit expansion a_1, a_2, ... of x. For double input the
// expansion stops early when the residual drops below `eps` (the tail is
// numerically meaningless past that point); `terminated` reports whether
// the expansion ended before max_digits.
struct Expansion {
  DigitWord digits;
  bool terminated = false;
};

Expansion digit_expansion(double x, int max_digits, double eps = 1e-12);
Expansion digit_expansion(const BigRat& x, int max_digits);

// Exact value of the finite continued fraction [0; a_1, ..., a_n].
BigRat cf_value(const DigitWord& word);

// Statistics of a digit word used by the orbit classifiers: positions
// whose digit exceeds a threshold, digit maxima, log-scale sums.
struct WordStats {
  BigInt max_digit;
  double log_digit_sum = 0.0;   // sum of log a_i
  std::size_t count_above = 0;  // digits strictly above the threshold
};

WordStats word_stats(const DigitWord& word, const BigInt& threshold);

}  // namespace cfdim
