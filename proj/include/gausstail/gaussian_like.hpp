// Copyright (c) 2026 The gausstail authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gausstail/errors.hpp"
#include "gausstail/rng.hpp"
#include "gausstail/slowly_varying.hpp"
#include "gausstail/special.hpp"

namespace gausstail {

/// A risk whose survival function above x_onset is exactly
///
///   P(X > x) = L(x) * x^alpha * exp(-x^2 / (2 p^2)),
///
/// completed below x_onset by a unit-density uniform body on
/// [x_low, x_onset] chosen so the total mass is 1 and the survival function
/// is continuous. Tail results are insensitive to the body; a uniform body
/// keeps the sampler and the convolution oracle exact.
class GaussianLikeRisk {
 public:
  GaussianLikeRisk(double alpha, SlowlyVarying sv, double p = 1.0,
                   std::optional<double> x_onset = std::nullopt)
      : alpha_(alpha), sv_(std::move(sv)), p_(p) {
    if (!std::isfinite(alpha_)) throw std::invalid_argument("risk: alpha must be finite");
    if (!(p_ > 0.0) || !std::isfinite(p_)) throw std::invalid_argument("risk: p must be positive");

    if (x_onset) {
      if (!(*x_onset > 1.0)) throw std::invalid_argument("risk: x_onset must exceed 1");
      x_onset_ = *x_onset;
      if (log_tail_expr(x_onset_) >= 0.0)
        throw std::invalid_argument("risk: tail expression at x_onset must be below 1");
    } else {
      x_onset_ = default_onset();
    }
    validate_decreasing();
    s_onset_ = std::exp(log_tail_expr(x_onset_));
    x_low_ = x_onset_ - (1.0 - s_onset_);
  }

  double alpha() const { return alpha_; }
  double p() const { return p_; }
  const SlowlyVarying& sv() const { return sv_; }
  double x_onset() const { return x_onset_; }
  double x_low() const { return x_low_; }
  double survival_at_onset() const { return s_onset_; }

  /// ln(L(x) x^alpha e^{-x^2/2p^2}); the exact log survival for x >= x_onset.
  double log_tail_expr(double x) const {
    return sv_.log_value(x) + alpha_ * std::log(x) - x * x / (2.0 * p_ * p_);
  }

  double log_survival(double x) const {
    if (!(x > x_low_)) return 0.0;
    if (x < x_onset_) return std::log1p(-(x - x_low_));
    return std::min(0.0, log_tail_expr(x));
  }

  double survival(double x) const { return std::exp(log_survival(x)); }

  /// -d ln S / dx on the tail; positive by the construction-time check.
  double hazard_slope(double x) const {
    return x / (p_ * p_) - alpha_ / x - sv_.dlog_du(x);
  }

  double log_density(double x) const {
    if (!(x > x_low_)) return kNegInf;
    if (x < x_onset_) return 0.0;  // unit-density body
    return log_tail_expr(x) + std::log(hazard_slope(x));
  }

  double density(double x) const { return std::exp(log_density(x)); }

  /// Inverse-transform sampling; the tail branch solves
  /// log_tail_expr(x) = ln u by safeguarded Newton to 1e-12 relative in x.
  double sample_one(RngStream& rng) const {
    const double u = rng.uniform();
    if (u >= s_onset_) return x_low_ + (1.0 - u);
    return invert_tail(std::log(u));
  }

  std::vector<double> sample(RngStream& rng, std::size_t n) const {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one(rng));
    return out;
  }

  /// Solves log_tail_expr(x) = target on [x_onset, inf).
  double invert_tail(double target) const {
    double lo = x_onset_;
    double hi = x_onset_ + p_;
    int guard = 0;
    while (log_tail_expr(hi) > target) {
      lo = hi;
      hi = x_onset_ + (hi - x_onset_) * 2.0;
      if (++guard > 200) throw ConvergenceError("risk: tail inversion bracket expansion failed");
    }
    double x = std::min(hi, std::max(lo, p_ * std::sqrt(std::max(0.0, -2.0 * target))));
    for (int it = 0; it < 200; ++it) {
      const double f = log_tail_expr(x) - target;
      if (f > 0.0)
        lo = x;
      else
        hi = x;
      const double step = f / hazard_slope(x);  // Newton on the log scale
      double next = x + step;
      if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - x) <= 1e-12 * x) return next;
      x = next;
    }
    throw ConvergenceError("risk: tail inversion did not converge");
  }

 private:
  double default_onset() const {
    double x = std::max(2.0, std::sqrt(std::max(alpha_, 0.0)) + 1.0);
    for (int it = 0; it < 2000000; ++it) {
      if (log_tail_expr(x) < -0.6931471805599453 && hazard_slope(x) > 0.0) return x;
      x += 0.1;
    }
    throw std::invalid_argument("risk: no admissible onset found");
  }

  void validate_decreasing() const {
    // hazard_slope > 0 must hold on the whole tail. Check a log grid up to
    // the point where x/p^2 provably dominates the other two terms.
    const double beta = std::abs(sv_.beta_total());
    double x_hi = std::max({50.0 * p_, 3.0 * x_onset_,
                            p_ * std::sqrt(std::abs(alpha_) + beta + 1.0) * 2.0});
    const int kGrid = 512;
    const double r = std::log(x_hi / x_onset_) / kGrid;
    for (int i = 0; i <= kGrid; ++i) {
      const double x = x_onset_ * std::exp(r * i);
      if (!(hazard_slope(x) > 0.0))
        throw std::invalid_argument("risk: tail expression is not strictly decreasing beyond x_onset");
    }
  }

  double alpha_;
  SlowlyVarying sv_;
  double p_;
  double x_onset_ = 0.0;
  double s_onset_ = 0.0;
  double x_low_ = 0.0;
};

}  // namespace gausstail
