// Copyright (c) 2026 The gausstail authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gausstail/errors.hpp"
#include "gausstail/portfolio.hpp"
#include "gausstail/special.hpp"
#include "gausstail/tail_estimate.hpp"

namespace gausstail {

namespace detail {

inline std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

/// ln of the n-term tail expression for Q = sum_i w_i X_i at threshold u:
///
///   (2pi)^{(n-1)/2} prod_j [w_j^{a_j+1} L_j(u)] u^{a+n-1}
///   ------------------------------------------------------ e^{-u^2/(2 l^2)}
///                      l^{2a+2n-1}
///
/// with a = sum a_j and l^2 = sum w_j^2. Requires u > 1 and unit Gaussian
/// scale (p = 1) on every entry.
inline TailEstimate tail_qn(const Portfolio& pf, double u) {
  if (!(u > 1.0)) throw std::invalid_argument("tail_qn: u must exceed 1");
  if (!pf.all_unit_p())
    throw std::invalid_argument("tail_qn: every risk must have unit Gaussian scale p = 1");
  const double n = static_cast<double>(pf.size());
  const double lam = pf.lambda_norm();
  const double a = pf.alpha_sum();
  double lg = 0.5 * (n - 1.0) * kLnTwoPi;
  for (const auto& e : pf.entries())
    lg += (e.risk.alpha() + 1.0) * std::log(e.weight) + e.risk.sv().log_value(u);
  lg += (a + n - 1.0) * std::log(u);
  lg -= (2.0 * a + 2.0 * n - 1.0) * std::log(lam);
  lg -= u * u / (2.0 * lam * lam);
  return make_closed_form(lg, {{"u", detail::fmt_num(u)}, {"n", detail::fmt_num(n)}});
}

/// ln of the two-term tail expression for X1 + X2 with per-risk Gaussian
/// scales p1, p2 and q = sqrt(p1^2 + p2^2):
///
///   sqrt(2pi) p1^{2a1+1} p2^{2a2+1} L1(u) L2(u) u^{a1+a2+1}
///   ------------------------------------------------------- e^{-u^2/(2q^2)}
///                       q^{2a1+2a2+3}
inline TailEstimate tail_pair(const GaussianLikeRisk& r1, const GaussianLikeRisk& r2, double u) {
  if (!(u > 1.0)) throw std::invalid_argument("tail_pair: u must exceed 1");
  const double a1 = r1.alpha(), a2 = r2.alpha();
  const double p1 = r1.p(), p2 = r2.p();
  const double q2 = p1 * p1 + p2 * p2;
  const double q = std::sqrt(q2);
  double lg = 0.5 * kLnTwoPi;
  lg += (2.0 * a1 + 1.0) * std::log(p1) + (2.0 * a2 + 1.0) * std::log(p2);
  lg += r1.sv().log_value(u) + r2.sv().log_value(u);
  lg += (a1 + a2 + 1.0) * std::log(u);
  lg -= (2.0 * a1 + 2.0 * a2 + 3.0) * std::log(q);
  lg -= u * u / (2.0 * q2);
  return make_closed_form(lg, {{"u", detail::fmt_num(u)}});
}

/// Same quantity as tail_qn, computed by folding the two-term rule
/// left-to-right and carrying the accumulated (alpha, prefactor, p^2)
/// triple, with every slowly varying factor taken at the aggregate
/// argument u. Agrees with tail_qn to round-off.
inline TailEstimate tail_qn_iterated(const Portfolio& pf, double u) {
  if (!(u > 1.0)) throw std::invalid_argument("tail_qn_iterated: u must exceed 1");
  if (!pf.all_unit_p())
    throw std::invalid_argument("tail_qn_iterated: every risk must have unit Gaussian scale p = 1");
  const auto& es = pf.entries();
  // w X for a unit-p risk obeys the two-term rule with scale w and
  // prefactor L(u) w^{-alpha}.
  double acc_alpha = es[0].risk.alpha();
  double acc_logl = es[0].risk.sv().log_value(u) - acc_alpha * std::log(es[0].weight);
  double acc_p2 = es[0].weight * es[0].weight;
  for (std::size_t k = 1; k < es.size(); ++k) {
    const double ak = es[k].risk.alpha();
    const double wk = es[k].weight;
    const double lk = es[k].risk.sv().log_value(u) - ak * std::log(wk);
    const double p2_new = acc_p2 + wk * wk;
    const double logl_new = 0.5 * kLnTwoPi + (2.0 * acc_alpha + 1.0) * 0.5 * std::log(acc_p2) +
                            (2.0 * ak + 1.0) * std::log(wk) + acc_logl + lk -
                            (2.0 * acc_alpha + 2.0 * ak + 3.0) * 0.5 * std::log(p2_new);
    acc_alpha = acc_alpha + ak + 1.0;
    acc_logl = logl_new;
    acc_p2 = p2_new;
  }
  const double lg = acc_logl + acc_alpha * std::log(u) - u * u / (2.0 * acc_p2);
  return make_closed_form(lg, {{"u", detail::fmt_num(u)}, {"route", "iterated"}});
}

struct ProdSumTails {
  TailEstimate sum_tail;
  TailEstimate product_tail;
};

/// Common tail value of P(sum w_i S_i > u) and P(prod S_i^{w_i} > u) as
/// u -> 1, for weights summing to 1:
///
///   prod_i [ w_i^{-g_i} Gamma(g_i + 1) P(S_i > u) ] / Gamma(sum g_i + 1)
///
/// Weights not summing to 1 are rescaled internally; the rescaling factor
/// is recorded in the meta of both estimates.
inline ProdSumTails prodsum_tail(const std::vector<BoundedScale>& scales,
                                 std::vector<double> lambdas, double u) {
  if (scales.empty() || scales.size() != lambdas.size())
    throw std::invalid_argument("prodsum_tail: scales and weights must be nonempty and match");
  if (!(u > 0.0) || !(u < 1.0)) throw std::invalid_argument("prodsum_tail: u must lie in (0,1)");
  double wsum = 0.0;
  for (double w : lambdas) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("prodsum_tail: weights must be strictly positive");
    wsum += w;
  }
  for (double& w : lambdas) w /= wsum;

  double lg = 0.0, gsum = 0.0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const double g = scales[i].gamma();
    gsum += g;
    lg += -g * std::log(lambdas[i]) + std::lgamma(g + 1.0) + scales[i].log_survival(u);
  }
  lg -= std::lgamma(gsum + 1.0);

  std::map<std::string, std::string> meta{{"u", detail::fmt_num(u)},
                                          {"weight_rescale", detail::fmt_num(1.0 / wsum)}};
  auto sum_est = make_closed_form(lg, meta);
  sum_est.meta["event"] = "weighted_sum";
  auto prod_est = make_closed_form(lg, meta);
  prod_est.meta["event"] = "weighted_product";
  return {std::move(sum_est), std::move(prod_est)};
}

/// Tail of the randomly scaled Gaussian portfolio Q* = sum w_i sqrt(S_i) X_i:
///
///   Gamma(sum g_i + 1) * P(V~ > 1 - 2 (l/u)^2) * Psi(u/l),
///
/// with V~ = sum (w_i^2/l^2) S_i evaluated through the product/sum tail rule
/// on weights w_i^2/l^2. Requires u > l sqrt(2).
inline TailEstimate scaled_tail(const ScaledPortfolio& sp, double u) {
  const double lam = sp.lambda_norm();
  if (!(u > lam * std::sqrt(2.0)))
    throw std::invalid_argument("scaled_tail: u must exceed lambda*sqrt(2)");
  const double arg = 1.0 - 2.0 * lam * lam / (u * u);
  double lg = std::lgamma(sp.gamma_sum() + 1.0);
  std::vector<BoundedScale> scales;
  std::vector<double> w;
  for (const auto& e : sp.entries()) {
    scales.push_back(e.scale);
    w.push_back(e.weight * e.weight / (lam * lam));
  }
  lg += prodsum_tail(scales, w, arg).sum_tail.log_prob;
  lg += log_normal_sf(u / lam);
  return make_closed_form(lg, {{"u", detail::fmt_num(u)}});
}

/// Inverts tail_qn: returns t with tail_qn(pf, t) = ln p to 1e-9 relative in
/// log space. Fixed point t <- l sqrt(2 (ln c(t) - ln p)) on the polynomial
/// prefactor c(t), safeguarded by bisection. Requires p <= 1e-2.
inline double quantile(const Portfolio& pf, double p) {
  if (!(p > 0.0) || !(p <= 1e-2))
    throw std::invalid_argument("quantile: probability must lie in (0, 1e-2]");
  const double target = std::log(p);
  const double lam = pf.lambda_norm();
  const auto logtail = [&](double t) { return tail_qn(pf, t).log_prob; };
  const auto logc = [&](double t) { return logtail(t) + t * t / (2.0 * lam * lam); };

  // Bracket the root; logtail is strictly decreasing past its hump.
  double lo = lam * std::sqrt(2.0 * std::max(1.0, -target * 0.2));
  double hi = lam * std::sqrt(2.0 * (-target + std::max(0.0, logc(std::max(2.0, lo))) + 5.0));
  int guard = 0;
  while (logtail(hi) > target) {
    hi *= 1.5;
    if (++guard > 200) throw ConvergenceError("quantile: failed to bracket from above");
  }
  guard = 0;
  while (logtail(lo) < target) {
    lo *= 0.8;
    if (!(lo > 1.0)) lo = 1.0 + 1e-9;
    if (logtail(lo) >= target) break;
    if (++guard > 200) throw ConvergenceError("quantile: failed to bracket from below");
  }

  double t = std::min(hi, std::max(lo, lam * std::sqrt(2.0 * std::max(1e-12, -target))));
  for (int it = 0; it < 200; ++it) {
    const double f = logtail(t) - target;
    if (std::abs(f) <= 1e-11 * std::max(1.0, std::abs(target))) return t;
    if (f > 0.0)
      lo = t;
    else
      hi = t;
    const double s = logc(t) - target;
    double next = (s > 0.0) ? lam * std::sqrt(2.0 * s) : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  throw ConvergenceError("quantile: fixed point did not converge");
}

/// Normalized inner product of the two weight vectors, in [0,1].
inline double rho(const PortfolioPair& pair) {
  const auto& a = pair.lambda();
  const auto& b = pair.lambda_star();
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return dot / (pair.lambda_norm() * pair.lambda_star_norm());
}

/// The weak tail dependence coefficient of the two portfolios, which equals
/// rho. Identical portfolios (rho = 1) are rejected.
inline double chi_bar_asymptotic(const PortfolioPair& pair) {
  const double r = rho(pair);
  if (!(r < 1.0))
    throw std::invalid_argument(
        "chi_bar: the two portfolios must be different (rho < 1 required)");
  return r;
}

struct JointExponents {
  double upper_log_bound;  // -z^2/(1+rho): variational half-space bound
  double lower_log_bound;  // sum_i ln P(X_i > delta_i): corner-box bound
  std::vector<double> delta;
};

/// Bracket for ln P(Q > t, W > t*) at the normalized threshold z
/// (z is on the scale where both weight vectors have unit norm).
///
/// The upper exponent comes from minimizing |a l + b l*|^2 over a + b = 1
/// (minimum (1+rho)/2 at a = b = 1/2); the lower bound evaluates the exact
/// survival of each risk at the corner point
/// delta_i = (l_i + l*_i) z / (1 + rho).
inline JointExponents joint_exponents(const PortfolioPair& pair, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("joint_exponents: z must be positive");
  const double r = rho(pair);
  if (!(r < 1.0))
    throw std::invalid_argument("joint_exponents: rho < 1 required");
  const double nl = pair.lambda_norm(), nls = pair.lambda_star_norm();
  JointExponents out;
  out.upper_log_bound = -z * z / (1.0 + r);
  out.delta.resize(pair.size());
  double lower = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double d = (pair.lambda()[i] / nl + pair.lambda_star()[i] / nls) * z / (1.0 + r);
    out.delta[i] = d;
    lower += pair.risks()[i].log_survival(d);
  }
  out.lower_log_bound = lower;
  return out;
}

struct ChiBarPoint {
  double u = 0.0;
  double t_u = 0.0;
  double t_u_star = 0.0;
  double z = 0.0;  // normalized max threshold
  double rho = 0.0;
  double chi_lower = 0.0;
  double chi_upper = 0.0;
  double chi_bar = 0.0;
  std::optional<double> joint_log{};
};

/// Finite-u weak tail dependence:
///
///   chi_u = [ln P(Q > t_u) + ln P(W > t_u*)] / ln P(Q > t_u, W > t_u*) - 1
///
/// with t_u, t_u* the 1/u marginal quantiles and the joint log supplied by
/// the caller (Monte Carlo) or defaulted to the midpoint of the
/// joint_exponents bracket. chi_lower/chi_upper evaluate the same ratio at
/// the bracket endpoints.
inline ChiBarPoint chi_bar_point(const PortfolioPair& pair, double u,
                                 std::optional<double> joint_log = std::nullopt) {
  if (!(u > 100.0)) throw std::invalid_argument("chi_bar: u must exceed 100");
  ChiBarPoint pt;
  pt.u = u;
  pt.rho = chi_bar_asymptotic(pair);
  const Portfolio q = pair.marginal(false);
  const Portfolio w = pair.marginal(true);
  pt.t_u = quantile(q, 1.0 / u);
  pt.t_u_star = quantile(w, 1.0 / u);
  pt.z = std::max(pt.t_u / pair.lambda_norm(), pt.t_u_star / pair.lambda_star_norm());
  const auto br = joint_exponents(pair, pt.z);
  const double marg = tail_qn(q, pt.t_u).log_prob + tail_qn(w, pt.t_u_star).log_prob;
  const auto ratio = [&](double jl) { return marg / jl - 1.0; };
  pt.chi_upper = ratio(br.upper_log_bound);
  pt.chi_lower = ratio(br.lower_log_bound);
  const double jl = joint_log ? *joint_log : 0.5 * (br.lower_log_bound + br.upper_log_bound);
  if (!(jl < 0.0)) throw std::invalid_argument("chi_bar: joint log probability must be negative");
  pt.joint_log = jl;
  pt.chi_bar = ratio(jl);
  return pt;
}

inline double chi_bar_u(const PortfolioPair& pair, double u,
                        std::optional<double> joint_log = std::nullopt) {
  return chi_bar_point(pair, u, joint_log).chi_bar;
}

}  // namespace gausstail
