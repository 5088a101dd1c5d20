#include "cfdim/cf_core.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace cfdim {

void ContinuantPair::push(const BigInt& digit) {
  if (digit < 1) throw DomainError("continued-fraction digit must be >= 1");
  BigInt p_next = digit * p_cur + p_prev;
  BigInt q_next = digit * q_cur + q_prev;
  p_prev = std::move(p_cur);
  q_prev = std::move(q_cur);
  p_cur = std::move(p_next);
  q_cur = std::move(q_next);
}

ContinuantPair continuants(const DigitWord& word) {
  ContinuantPair s;
  for (const auto& a : word) s.push(a);
  return s;
}

double log_big(const BigInt& v) {
  if (v <= 0) throw DomainError("log_big requires a positive integer");
  const std::size_t bits = msb(v);  // index of the most significant bit
  if (bits <= 52) return std::log(v.convert_to<double>());
  // v = top * 2^shift with top holding the leading 63 bits.
  const std::size_t shift = bits - 62;
  BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) +
         static_cast<double>(shift) * 0.69314718055994530942;
}

CylinderInterval cylinder(const DigitWord& word) {
  if (word.empty()) throw DomainError("cylinder needs at least one digit");
  ContinuantPair s = continuants(word);
  CylinderInterval out;
  out.q = s.q_cur;
  out.q_prev = s.q_prev;
  BigRat a(s.p_cur, s.q_cur);
  BigRat b(s.p_cur + s.p_prev, s.q_cur + s.q_prev);
  if (a < b) {
    out.lo = std::move(a);
    out.hi = std::move(b);
  } else {
    out.lo = std::move(b);
    out.hi = std::move(a);
  }
  out.length = out.hi - out.lo;
  return out;
}

Expansion digit_expansion(double x, int max_digits, double eps) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("digit_expansion needs x in (0,1)");
  Expansion out;
  for (int i = 0; i < max_digits; ++i) {
    if (x < eps) {
      out.terminated = true;
      return out;
    }
    double inv = 1.0 / x;
    double fl = std::floor(inv);
    // Guard against 1/x landing a hair under an integer.
    if (inv - fl > 1.0 - 1e-12) fl += 1.0;
    out.digits.emplace_back(static_cast<long long>(fl));
    x = inv - fl;
    if (x < 0.0) x = 0.0;
  }
  return out;
}

Expansion digit_expansion(const BigRat& x, int max_digits) {
  if (!(x > 0 && x < 1)) throw DomainError("digit_expansion needs x in (0,1)");
  Expansion out;
  BigInt num = numerator(x), den = denominator(x);
  for (int i = 0; i < max_digits; ++i) {
    if (num == 0) {
      out.terminated = true;
      return out;
    }
    // 1/x = den/num; a = floor(den/num), remainder r = den - a*num.
    BigInt a = den / num;
    BigInt r = den - a * num;
    out.digits.push_back(a);
    den = std::move(num);
    num = std::move(r);
  }
  return out;
}

BigRat cf_value(const DigitWord& word) {
  ContinuantPair s = continuants(word);
  if (word.empty()) throw DomainError("cf_value needs at least one digit");
  return BigRat(s.p_cur, s.q_cur);
}

WordStats word_stats(const DigitWord& word, const BigInt& threshold) {
  WordStats st;
  st.max_digit = 0;
  for (const auto& a : word) {
    if (a > st.max_digit) st.max_digit = a;
    st.log_digit_sum += log_big(a);
    if (a > threshold) ++st.count_above;
  }
  return st;
}

}  // namespace cfdim
