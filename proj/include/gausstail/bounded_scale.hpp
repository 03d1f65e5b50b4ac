// Copyright (c) 2026 The gausstail authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "gausstail/rng.hpp"

namespace gausstail {

/// A [0,1]-supported scale factor whose survival function is regularly
/// varying at the upper endpoint 1 with index gamma:
///
///   PowerEndpoint:  P(S > 1-t) = t^gamma exactly, t in [0,1]
///   BetaScale:      S ~ Beta(a, gamma)
///
/// gamma = 0 is permitted for PowerEndpoint and degenerates to S == 1.
class BoundedScale {
 public:
  enum class Kind { power_endpoint, beta };

  static BoundedScale power_endpoint(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
      throw std::invalid_argument("scale: gamma must be nonnegative and finite");
    return BoundedScale(Kind::power_endpoint, 0.0, gamma);
  }

  static BoundedScale beta(double a, double gamma) {
    if (!(a > 0.0) || !std::isfinite(a))
      throw std::invalid_argument("scale: beta parameter a must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
      throw std::invalid_argument("scale: beta parameter gamma must be positive");
    return BoundedScale(Kind::beta, a, gamma);
  }

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double beta_a() const { return a_; }

  /// P(S > u); total in u (1 below the support, 0 at and above 1).
  double survival(double u) const {
    if (u < 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    if (kind_ == Kind::power_endpoint) {
      if (gamma_ == 0.0) return 1.0;
      return std::pow(1.0 - u, gamma_);
    }
    return boost::math::ibetac(a_, gamma_, u);
  }

  double log_survival(double u) const {
    if (u < 0.0) return 0.0;
    if (u >= 1.0) return -std::numeric_limits<double>::infinity();
    if (kind_ == Kind::power_endpoint) return gamma_ * std::log1p(-u);
    return std::log(boost::math::ibetac(a_, gamma_, u));
  }

  double sample(RngStream& rng) const {
    const double u = rng.uniform();
    if (kind_ == Kind::power_endpoint) {
      if (gamma_ == 0.0) return 1.0;
      return 1.0 - std::pow(u, 1.0 / gamma_);
    }
    return boost::math::ibeta_inv(a_, gamma_, u);
  }

  std::string describe() const {
    std::ostringstream os;
    if (kind_ == Kind::power_endpoint)
      os << "power_endpoint(gamma=" << gamma_ << ")";
    else
      os << "beta(a=" << a_ << ",gamma=" << gamma_ << ")";
    return os.str();
  }

 private:
  BoundedScale(Kind kind, double a, double gamma) : kind_(kind), a_(a), gamma_(gamma) {}

  Kind kind_;
  double a_;
  double gamma_;
};

}  // namespace gausstail
