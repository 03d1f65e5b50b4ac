// Copyright (c) 2026 The gausstail authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gausstail {

/// A slowly varying multiplier L(u) = c * (ln u)^beta, closed under products.
///
/// The factory functions mirror the three supported forms: a positive
/// constant, a log-power, and products of the two. A product of log-powers
/// collapses to a single (c, beta) pair, which keeps d(ln L)/du available in
/// closed form.
class SlowlyVarying {
 public:
  static SlowlyVarying constant(double c) { return SlowlyVarying(check_c(c), 0.0); }

  static SlowlyVarying log_power(double c, double beta) {
    if (!std::isfinite(beta)) throw std::invalid_argument("slowly varying: beta must be finite");
    return SlowlyVarying(check_c(c), beta);
  }

  static SlowlyVarying product(const SlowlyVarying& a, const SlowlyVarying& b) {
    return SlowlyVarying(a.log_c_ + b.log_c_, a.beta_ + b.beta_);
  }

  /// ln L(u); requires u > 1 when beta != 0.
  double log_value(double u) const {
    if (beta_ == 0.0) return log_c_;
    return log_c_ + beta_ * std::log(std::log(u));
  }

  double value(double u) const { return std::exp(log_value(u)); }

  /// d(ln L)/du = beta / (u ln u).
  double dlog_du(double u) const {
    if (beta_ == 0.0) return 0.0;
    return beta_ / (u * std::log(u));
  }

  double beta_total() const { return beta_; }
  double log_c() const { return log_c_; }

  std::string describe() const {
    std::ostringstream os;
    os << "c=" << std::exp(log_c_);
    if (beta_ != 0.0) os << ",beta=" << beta_;
    return os.str();
  }

 private:
  SlowlyVarying(double log_c, double beta) : log_c_(log_c), beta_(beta) {}

  static double check_c(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
      throw std::invalid_argument("slowly varying: constant must be positive and finite");
    return std::log(c);
  }

  double log_c_;
  double beta_;
};

}  // namespace gausstail
