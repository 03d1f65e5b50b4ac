// Copyright (c) 2026 The gausstail authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace gausstail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLnTwoPi = 1.8378770664093454836;     // ln(2*pi)
inline constexpr double kLnSqrtTwoPi = 0.91893853320467274178;  // ln(sqrt(2*pi))
inline constexpr double kInvSqrtTwo = 0.70710678118654752440;

inline double log_normal_pdf(double x) { return -0.5 * x * x - kLnSqrtTwoPi; }

namespace detail {

// Asymptotic Mills series 1 - 1/x^2 + 3/x^4 - ...; accurate to machine
// precision for x >= 20 with 10 terms.
inline double mills_log_series(double x) {
  const double inv2 = 1.0 / (x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 10; ++k) {
    term *= -(2 * k - 1) * inv2;
    sum += term;
  }
  return std::log(sum);
}

}  // namespace detail

/// ln P(Z > x) for Z standard normal; stable for any finite x.
inline double log_normal_sf(double x) {
  if (x < 20.0) return std::log(0.5 * std::erfc(x * kInvSqrtTwo));
  return -0.5 * x * x - std::log(x) - kLnSqrtTwoPi + detail::mills_log_series(x);
}

/// P(Z > x); underflows to 0 past x ~ 38.
inline double normal_sf(double x) {
  if (x < 37.0) return 0.5 * std::erfc(x * kInvSqrtTwo);
  return std::exp(log_normal_sf(x));
}

/// ln(e^a + e^b)
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

/// ln(e^a - e^b), requires a >= b.
inline double log_sub(double a, double b) {
  if (b == kNegInf) return a;
  const double d = b - a;  // <= 0
  return a + std::log1p(-std::exp(d));
}

/// Streaming log-sum-exp with on-the-fly rescaling. Deterministic: the
/// result depends only on the sequence of add() calls.
class LogAccumulator {
 public:
  void add(double lx) {
    if (lx == kNegInf) return;
    if (lx > max_) {
      if (max_ != kNegInf) sum_ *= std::exp(max_ - lx);
      max_ = lx;
    }
    sum_ += std::exp(lx - max_);
  }
  void add_scaled(double lx, double weight) {
    if (lx == kNegInf || weight == 0.0) return;
    if (lx > max_) {
      if (max_ != kNegInf) sum_ *= std::exp(max_ - lx);
      max_ = lx;
    }
    sum_ += weight * std::exp(lx - max_);
  }
  bool empty() const { return sum_ == 0.0; }
  double log_total() const {
    if (sum_ <= 0.0) return kNegInf;
    return max_ + std::log(sum_);
  }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace gausstail
