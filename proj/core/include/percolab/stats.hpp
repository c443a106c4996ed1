#pragma once

#include <cmath>
#include <cstdint>

namespace percolab {

struct ci_t {
  double low = 0.0;
  double high = 0.0;
  double width() const { return high - low; }
};

// Kahan compensated summation; keeps 2^22-term enumeration sums stable.
struct kahan_sum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

namespace stats {

constexpr double z95 = 1.959963984540054;  // two-sided 95% normal quantile

// Wilson score interval for a binomial frequency; well-behaved at 0 and 1.
inline ci_t wilson_ci(int64_t successes, int64_t n) {
  if (n <= 0) return {0.0, 1.0};
  double phat = static_cast<double>(successes) / static_cast<double>(n);
  double z2 = z95 * z95;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = z95 * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  double lo = center - half, hi = center + half;
  return {lo < 0.0 ? 0.0 : lo, hi > 1.0 ? 1.0 : hi};
}

inline double binom_stderr(double phat, int64_t n) {
  return n > 0 ? std::sqrt(phat * (1.0 - phat) / static_cast<double>(n)) : 0.0;
}

// Normal-approximation interval for a sample mean given sum and sum of squares.
inline ci_t mean_ci(double sum, double sumsq, int64_t n) {
  if (n <= 0) return {0.0, 0.0};
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  if (var < 0.0) var = 0.0;
  double half = z95 * std::sqrt(var / n);
  return {mean - half, mean + half};
}

inline double mean_stderr(double sum, double sumsq, int64_t n) {
  if (n <= 1) return 0.0;
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  return var > 0.0 ? std::sqrt(var / n) : 0.0;
}

}  // namespace stats
}  // namespace percolab
