// Copyright (c) 2026 The gausstail authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gausstail/bounded_scale.hpp"
#include "gausstail/gaussian_like.hpp"

namespace gausstail {

struct PortfolioEntry {
  double weight;
  GaussianLikeRisk risk;
};

/// Deterministic weights attached to independent risks: Q = sum_i w_i X_i.
class Portfolio {
 public:
  explicit Portfolio(std::vector<PortfolioEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("portfolio: at least one entry required");
    double sq = 0.0, asum = 0.0;
    for (const auto& e : entries_) {
      if (!(e.weight > 0.0) || !std::isfinite(e.weight))
        throw std::invalid_argument("portfolio: weights must be strictly positive");
      sq += e.weight * e.weight;
      asum += e.risk.alpha();
    }
    lambda_norm_ = std::sqrt(sq);
    alpha_sum_ = asum;
  }

  const std::vector<PortfolioEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double lambda_norm() const { return lambda_norm_; }
  double alpha_sum() const { return alpha_sum_; }

  bool all_unit_p() const {
    for (const auto& e : entries_)
      if (e.risk.p() != 1.0) return false;
    return true;
  }

 private:
  std::vector<PortfolioEntry> entries_;
  double lambda_norm_;
  double alpha_sum_;
};

struct ScaledEntry {
  double weight;
  BoundedScale scale;
};

/// Q* = sum_i w_i sqrt(S_i) X_i with X_i standard normal, equal in
/// distribution to X_1 sqrt(V) with V = sum_i w_i^2 S_i.
class ScaledPortfolio {
 public:
  explicit ScaledPortfolio(std::vector<ScaledEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("scaled portfolio: at least one entry required");
    double sq = 0.0, g = 0.0;
    for (const auto& e : entries_) {
      if (!(e.weight > 0.0) || !std::isfinite(e.weight))
        throw std::invalid_argument("scaled portfolio: weights must be strictly positive");
      sq += e.weight * e.weight;
      g += e.scale.gamma();
    }
    lambda_norm_ = std::sqrt(sq);
    gamma_sum_ = g;
  }

  const std::vector<ScaledEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double lambda_norm() const { return lambda_norm_; }
  double gamma_sum() const { return gamma_sum_; }

 private:
  std::vector<ScaledEntry> entries_;
  double lambda_norm_;
  double gamma_sum_;
};

/// Two weight vectors over one shared pool of risks: Q = sum l_i X_i and
/// W = sum l*_i X_i. Entries may be zero (but not a whole vector).
class PortfolioPair {
 public:
  PortfolioPair(std::vector<double> lambda, std::vector<double> lambda_star,
                std::vector<GaussianLikeRisk> risks)
      : lambda_(std::move(lambda)),
        lambda_star_(std::move(lambda_star)),
        risks_(std::move(risks)) {
    const std::size_t n = risks_.size();
    if (n == 0) throw std::invalid_argument("pair: at least one risk required");
    if (lambda_.size() != n || lambda_star_.size() != n)
      throw std::invalid_argument("pair: weight vectors must match the number of risks");
    double s = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(lambda_[i] >= 0.0) || !std::isfinite(lambda_[i]) || !(lambda_star_[i] >= 0.0) ||
          !std::isfinite(lambda_star_[i]))
        throw std::invalid_argument("pair: weights must be nonnegative and finite");
      s += lambda_[i] * lambda_[i];
      ss += lambda_star_[i] * lambda_star_[i];
    }
    if (!(s > 0.0) || !(ss > 0.0))
      throw std::invalid_argument("pair: each weight vector must be nonzero");
    norm_ = std::sqrt(s);
    norm_star_ = std::sqrt(ss);
  }

  const std::vector<double>& lambda() const { return lambda_; }
  const std::vector<double>& lambda_star() const { return lambda_star_; }
  const std::vector<GaussianLikeRisk>& risks() const { return risks_; }
  std::size_t size() const { return risks_.size(); }
  double lambda_norm() const { return norm_; }
  double lambda_star_norm() const { return norm_star_; }

  /// Marginal portfolio for one side, zero-weight entries dropped.
  Portfolio marginal(bool star) const {
    const auto& w = star ? lambda_star_ : lambda_;
    std::vector<PortfolioEntry> es;
    for (std::size_t i = 0; i < risks_.size(); ++i)
      if (w[i] > 0.0) es.push_back({w[i], risks_[i]});
    return Portfolio(std::move(es));
  }

 private:
  std::vector<double> lambda_;
  std::vector<double> lambda_star_;
  std::vector<GaussianLikeRisk> risks_;
  double norm_;
  double norm_star_;
};

}  // namespace gausstail
