// Copyright (c) 2026 The gausstail authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

namespace gausstail {

enum class Method { closed_form, quadrature, monte_carlo };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

/// A tail probability reported in log space with provenance.
///
/// log_prob is the natural log of the estimated/evaluated probability; for
/// closed-form estimates it is the exact log of the asymptotic expression,
/// which is a probability (<= 0) throughout the asymptotic regime.
/// ci_log_halfwidth is present exactly for Monte Carlo estimates and is a
/// 95% delta-method half-width on the log scale.
struct TailEstimate {
  double log_prob = 0.0;
  Method method = Method::closed_form;
  std::optional<double> ci_log_halfwidth{};
  std::map<std::string, std::string> meta{};
};

inline TailEstimate make_closed_form(double log_prob,
                                     std::map<std::string, std::string> meta = {}) {
  return TailEstimate{log_prob, Method::closed_form, std::nullopt, std::move(meta)};
}

inline TailEstimate make_quadrature(double log_prob,
                                    std::map<std::string, std::string> meta = {}) {
  return TailEstimate{log_prob, Method::quadrature, std::nullopt, std::move(meta)};
}

inline TailEstimate make_monte_carlo(double log_prob, double ci_log_halfwidth,
                                     std::map<std::string, std::string> meta = {}) {
  return TailEstimate{log_prob, Method::monte_carlo, ci_log_halfwidth, std::move(meta)};
}

}  // namespace gausstail
