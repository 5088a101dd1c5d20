#pragma once

// Small numeric helpers shared across the library: streaming log-sum-exp,
// extended-real values with zero/finite/infinite tags, and polynomial
// extrapolation of slowly converging traces.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace cfdim {

// Accumulates log(sum exp(x_i)) without overflow, one term at a time.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (empty_) {
      max_ = log_term;
      sum_ = 1.0;
      empty_ = false;
      return;
    }
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }

  // log of the accumulated sum; -inf when nothing was added.
  double value() const {
    if (empty_) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_);
  }

  bool empty() const { return empty_; }

 private:
  double max_ = 0.0, sum_ = 0.0;
  bool empty_ = true;
};

// A limit value that may be exactly zero, a finite positive real, or +inf.
struct ExtReal {
  enum class Tag { Zero, Finite, Infinite } tag = Tag::Finite;
  double value = 0.0;  // meaningful only when tag == Finite

  static ExtReal zero() { return {Tag::Zero, 0.0}; }
  static ExtReal finite(double v) { return {Tag::Finite, v}; }
  static ExtReal infinite() {
    return {Tag::Infinite, std::numeric_limits<double>::infinity()};
  }
  bool is_zero() const { return tag == Tag::Zero; }
  bool is_finite() const { return tag == Tag::Finite; }
  bool is_infinite() const { return tag == Tag::Infinite; }

  std::string str() const {
    switch (tag) {
      case Tag::Zero: return "0";
      case Tag::Infinite: return "inf";
      default: return std::to_string(value);
    }
  }
};

// Neville polynomial extrapolation of f(n) to n -> infinity using nodes
// x = 1/n. Exact for values that are rational functions of n up to the
// chosen degree; used to read off limits of slowly converging traces.
//
// nodes: (n_i, f(n_i)) with distinct n_i. Returns the degree-(k-1)
// estimate together with the previous-degree estimate for a stability
// check.
struct ExtrapolationResult {
  double value = 0.0;
  double previous = 0.0;  // estimate one degree lower
  double discrepancy = 0.0;
};

inline ExtrapolationResult extrapolate_to_limit(
    const std::vector<std::pair<double, double>>& nodes) {
  const std::size_t k = nodes.size();
  std::vector<double> x(k), t(k);
  for (std::size_t i = 0; i < k; ++i) {
    x[i] = 1.0 / nodes[i].first;
    t[i] = nodes[i].second;
  }
  double prev_stage = t.empty() ? 0.0 : t[0];
  for (std::size_t level = 1; level < k; ++level) {
    for (std::size_t i = 0; i + level < k; ++i) {
      // value at x=0 of the interpolant through x_i..x_{i+level}
      t[i] = (x[i + level] * t[i] - x[i] * t[i + 1]) / (x[i + level] - x[i]);
    }
    if (level + 1 < k) prev_stage = t[0];
  }
  ExtrapolationResult out;
  out.value = t[0];
  out.previous = k >= 2 ? prev_stage : t[0];
  out.discrepancy = std::abs(out.value - out.previous);
  return out;
}

}  // namespace cfdim
