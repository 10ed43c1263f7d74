// Copyright 2026 The hamsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <string>

#include "hamsim/errors.hpp"
#include "hamsim/rlcu.hpp"

namespace hamsim {

// Closed-form cost/optimization model. Every O(.) from the sources is
// implemented with constant 1 ("model units"); depths and sample counts stay
// real-valued and are ceil-rounded only at reporting boundaries.

struct TrotterCostInputs {
  double alpha_k;     // Trotter error prefactor
  int k;              // order (1 or even)
  double L;           // term count
  double gamma;       // per-gate error rate
  double gamma_prime; // per-gate PEC overhead rate

  TrotterCostInputs(double alpha, int order, double terms, double g, double gp)
      : alpha_k(alpha), k(order), L(terms), gamma(g), gamma_prime(gp) {
    if (alpha <= 0.0 || terms <= 0.0 || g < 0.0 || gp < 0.0)
      throw ValidationError("TrotterCostInputs: nonpositive input");
    if (order != 1 && (order < 2 || order % 2 != 0))
      throw ValidationError("TrotterCostInputs: order must be 1 or even");
  }

  /** C_k = k^{1/(k+1)} + k^{-k/(k+1)}; equals 2 at k=1. */
  double order_constant() const {
    const double kk = static_cast<double>(k);
    return std::pow(kk, 1.0 / (kk + 1.0)) + std::pow(kk, -kk / (kk + 1.0));
  }
};

struct RlcuCostInputs {
  double beta;
  double t;
  double gamma_prime;
  double gamma_c;

  RlcuCostInputs(double b, double time, double gp, double gc)
      : beta(b), t(time), gamma_prime(gp), gamma_c(gc) {
    if (b <= 0.0 || time <= 0.0 || gp < 0.0 || gc < 0.0)
      throw ValidationError("RlcuCostInputs: nonpositive input");
  }

  double t_tilde() const { return beta * t; }
};

/** Error bound without mitigation: eps_b = C_k alpha^{1/(k+1)} (L gamma)^{k/(k+1)}. */
inline double trotter_error_bound(const TrotterCostInputs& in) {
  const double kk = static_cast<double>(in.k);
  return in.order_constant() * std::pow(in.alpha_k, 1.0 / (kk + 1.0)) *
         std::pow(in.L * in.gamma, kk / (kk + 1.0));
}

/** Unmitigated optimal depth d* = (k alpha / (L gamma))^{1/(k+1)}. */
inline double trotter_optimal_depth_noqem(const TrotterCostInputs& in) {
  const double kk = static_cast<double>(in.k);
  if (in.gamma <= 0.0)
    throw ValidationError("trotter_optimal_depth_noqem: gamma must be > 0");
  return std::pow(kk * in.alpha_k / (in.L * in.gamma), 1.0 / (kk + 1.0));
}

/** Critical error under PEC: eps_c = alpha_k (L gamma' / k)^k. */
inline double critical_error(const TrotterCostInputs& in) {
  const double kk = static_cast<double>(in.k);
  return in.alpha_k * std::pow(in.L * in.gamma_prime / kk, kk);
}

/** RHS of the depth equation eps^2 = (alpha^2/d^{2k}) (1 + k/(gamma' L d)). */
inline double trotter_depth_equation_rhs(const TrotterCostInputs& in, double d) {
  const double kk = static_cast<double>(in.k);
  return (in.alpha_k * in.alpha_k / std::pow(d, 2.0 * kk)) *
         (1.0 + kk / (in.gamma_prime * in.L * d));
}

/**
 * PEC-optimal depth for target accuracy eps, found by bisection on the
 * strictly decreasing depth equation.
 */
inline double trotter_optimal_depth_pec(const TrotterCostInputs& in, double eps) {
  if (eps <= 0.0) throw ValidationError("trotter_optimal_depth_pec: eps must be > 0");
  if (in.gamma_prime <= 0.0)
    throw ValidationError("trotter_optimal_depth_pec: gamma' must be > 0");
  const double target = eps * eps;
  double lo = 1e-12, hi = 1.0;
  while (trotter_depth_equation_rhs(in, hi) > target) hi *= 2.0;
  while (trotter_depth_equation_rhs(in, lo) < target) lo *= 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (trotter_depth_equation_rhs(in, mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/** M at stationarity: (L gamma'/(k alpha^2)) e^{2 L d gamma'} d^{2k+1}. */
inline double trotter_samples_at_depth(const TrotterCostInputs& in, double d) {
  const double kk = static_cast<double>(in.k);
  return (in.L * in.gamma_prime / (kk * in.alpha_k * in.alpha_k)) *
         std::exp(2.0 * in.L * d * in.gamma_prime) * std::pow(d, 2.0 * kk + 1.0);
}

enum class TrotterRegime { below_critical, near_critical, above_critical };

struct TrotterSampleCost {
  double exact;        // M at the solved optimal depth
  double depth;        // the solved depth d(eps)
  double branch;       // asymptotic branch value for the regime
  TrotterRegime regime;
};

/** Asymptotic M(eps) branches. */
inline double trotter_samples_branch(const TrotterCostInputs& in, double eps,
                                     TrotterRegime regime) {
  const double kk = static_cast<double>(in.k);
  const double eps_c = critical_error(in);
  switch (regime) {
    case TrotterRegime::below_critical: {
      const double x = std::pow(eps_c / eps, 1.0 / kk);
      return (1.0 / (eps * eps)) * x * std::exp(2.0 * kk * x);
    }
    case TrotterRegime::near_critical:
      return std::exp(2.0 * kk) / (eps_c * eps_c);
    case TrotterRegime::above_critical: {
      const double y = std::pow(eps_c / eps, 2.0 / (2.0 * kk + 1.0));
      return (1.0 / (eps * eps)) * (1.0 + 2.0 * kk * y);
    }
  }
  throw ValidationError("trotter_samples_branch: unknown regime");
}

/**
 * Exact sample count at accuracy eps: solve the depth equation, then
 * evaluate the stationarity sample count there. Regime tag and the matching
 * asymptotic branch ride along as diagnostics.
 */
inline TrotterSampleCost trotter_samples(const TrotterCostInputs& in, double eps) {
  TrotterSampleCost out{};
  out.depth = trotter_optimal_depth_pec(in, eps);
  out.exact = trotter_samples_at_depth(in, out.depth);
  const double eps_c = critical_error(in);
  out.regime = eps < 0.5 * eps_c   ? TrotterRegime::below_critical
               : eps > 2.0 * eps_c ? TrotterRegime::above_critical
                                   : TrotterRegime::near_critical;
  out.branch = trotter_samples_branch(in, eps, out.regime);
  return out;
}

enum class RlcuRegime { optimized, shallow };

struct RlcuRepetition {
  double r;
  RlcuRegime regime;
};

/**
 * Repetition choice: r* = t~ / sqrt(2 gamma') when sqrt(2 gamma') t~ >= 1
 * (optimized regime), else r = t~^2 (shallow regime).
 */
inline RlcuRepetition rlcu_optimal_r(const RlcuCostInputs& in) {
  const double tt = in.t_tilde();
  if (in.gamma_prime <= 0.0) return {tt * tt, RlcuRegime::shallow};
  const double root = std::sqrt(2.0 * in.gamma_prime);
  if (root * tt >= 1.0) return {tt / root, RlcuRegime::optimized};
  return {tt * tt, RlcuRegime::shallow};
}

/** Exponent t~^2/r + 2 gamma' r + 2 gamma_c t~ of the sample-count formula. */
inline double rlcu_sample_exponent(const RlcuCostInputs& in, double r) {
  const double tt = in.t_tilde();
  return tt * tt / r + 2.0 * in.gamma_prime * r + 2.0 * in.gamma_c * tt;
}

/** M(eps, r) = eps^{-2} exp(t~^2/r + 2 gamma' r + 2 gamma_c t~). */
inline double rlcu_samples(const RlcuCostInputs& in, double eps, double r) {
  if (eps <= 0.0 || r <= 0.0)
    throw ValidationError("rlcu_samples: eps and r must be > 0");
  return std::exp(rlcu_sample_exponent(in, r)) / (eps * eps);
}

/**
 * Theorem-form MSE bound
 * eps^2 <= M^{-1} exp(t~^2/r + 2 gamma' r + t~ (e^{2 gamma_c} - 1)),
 * as stated by the sources. Known to be optimistic because the underlying
 * segment-overhead inequality Gamma_S <= e^{lambda^2} fails for lambda ~ 1;
 * validation asserts the provable variant below and reports this one.
 */
inline double rlcu_mse_bound(const RlcuCostInputs& in, double r, double m_shots) {
  if (r <= 0.0 || m_shots <= 0.0)
    throw ValidationError("rlcu_mse_bound: r and M must be > 0");
  const double tt = in.t_tilde();
  return std::exp(tt * tt / r + 2.0 * in.gamma_prime * r +
                  tt * (std::exp(2.0 * in.gamma_c) - 1.0)) /
         m_shots;
}

/**
 * Provable MSE bound for the implemented estimator: the exact reweighting
 * Gamma_RLCU^2 = ||alpha||_1^{4r} times the PEC overhead of 2r non-Clifford
 * and 2 sum k_j Clifford gates (two controlled branches per round):
 * eps^2 <= M^{-1} ||alpha||_1^{4r} exp(4 gamma' r + 2 t~ (e^{2 gamma_c} - 1)).
 */
inline double rlcu_mse_bound_provable(const RlcuCostInputs& in, double r,
                                      double m_shots) {
  if (r <= 0.0 || m_shots <= 0.0)
    throw ValidationError("rlcu_mse_bound_provable: r and M must be > 0");
  const double tt = in.t_tilde();
  const double lambda = tt / r;
  const double a1 = lcu_one_norm(lambda);
  return std::pow(a1, 4.0 * r) *
         std::exp(4.0 * in.gamma_prime * r +
                  2.0 * tt * (std::exp(2.0 * in.gamma_c) - 1.0)) /
         m_shots;
}

/** GST sample budget Gamma^2 N_g^2 / eps^2 (unit-constant convention). */
inline double gst_budget(double n_gates, double eps, double reweight = 1.0) {
  if (n_gates <= 0.0 || eps <= 0.0 || reweight <= 0.0)
    throw ValidationError("gst_budget: positive inputs required");
  return reweight * reweight * n_gates * n_gates / (eps * eps);
}

struct GstRatio {
  double exact;       // M_g / R with this module's own d*, M
  double branch;      // regime-tagged asymptotic value
  double suppression; // the regime's exponential/polynomial factor alone
  TrotterRegime regime;
};

/** Trotter-side ratio M_g / R with R = d* L M. */
inline GstRatio gst_ratio_trotter(const TrotterCostInputs& in, double eps) {
  GstRatio out{};
  const TrotterSampleCost sc = trotter_samples(in, eps);
  const double n_g = sc.depth * in.L;
  out.exact = gst_budget(n_g, eps) / (sc.depth * in.L * sc.exact);
  out.regime = sc.regime;
  const double kk = static_cast<double>(in.k);
  const double eps_c = critical_error(in);
  switch (sc.regime) {
    case TrotterRegime::below_critical:
      out.suppression = std::exp(-2.0 * kk * std::pow(eps_c / eps, 1.0 / kk));
      out.branch = (kk / in.gamma_prime) * out.suppression;
      break;
    case TrotterRegime::near_critical:
      out.suppression = std::exp(-2.0 * kk);
      out.branch = (kk / in.gamma_prime) * out.suppression;
      break;
    case TrotterRegime::above_critical: {
      const double y = std::pow(eps_c / eps, 2.0 / (2.0 * kk + 1.0));
      out.suppression = y / (1.0 + 2.0 * kk * y);
      out.branch = (kk / in.gamma_prime) * out.suppression;
      break;
    }
  }
  return out;
}

struct RlcuGstCost {
  double m_g_at_r_star;     // using the regime's r choice
  double m_g_at_r_tsquare;  // using r = t~^2 (Gamma_RLCU = O(1) route)
  double ratio;             // M_g / R in the regime (reweighting cancels)
  RlcuRegime regime;
};

/**
 * RLCU GST budget, reported for both repetition conventions side by side
 * (the sources evaluate Gamma_RLCU at r = t~^2 in the same regime where the
 * optimization picks r* = t~/sqrt(2 gamma')).
 */
inline RlcuGstCost gst_ratio_rlcu(const RlcuCostInputs& in, double eps) {
  RlcuGstCost out{};
  const RlcuRepetition rep = rlcu_optimal_r(in);
  out.regime = rep.regime;
  const double tt = in.t_tilde();
  auto gamma_for = [&](double r) {
    return gamma_rlcu(tt / r, static_cast<int>(std::max(1.0, std::round(r))));
  };
  out.m_g_at_r_star = gst_budget(rep.r, eps, gamma_for(rep.r));
  const double r_sq = tt * tt;
  out.m_g_at_r_tsquare = gst_budget(r_sq, eps, gamma_for(r_sq));
  if (rep.regime == RlcuRegime::optimized)
    out.ratio = tt / std::sqrt(2.0 * in.gamma_prime);
  else
    out.ratio = tt * tt;
  return out;
}

struct SniBudgets {
  double m_qst;    // characterization cost eps^{-2} s^2 (1-2q_ST)^{-4}
  double m;        // computation cost eps^{-2} (1-2q_ST)^{-2s}
  double q_st;
  double ratio;    // M_qst / R with R = d L M
};

/** Segmented SNI budgets under the unit-constant convention. */
inline SniBudgets sni_budgets(double q, double d, double eps, double s,
                              double L = 1.0) {
  if (eps <= 0.0 || L <= 0.0) throw ValidationError("sni_budgets: bad eps or L");
  if (s <= 2.0 * q * d)
    throw ValidationError("sni_budgets: infeasible segmentation (s <= 2qd)");
  SniBudgets out{};
  out.q_st = 1.0 - std::pow(1.0 - q, d / s);
  const double shrink = 1.0 - 2.0 * out.q_st;
  out.m_qst = s * s / (eps * eps * std::pow(shrink, 4.0));
  out.m = std::pow(shrink, -2.0 * s) / (eps * eps);
  out.ratio = out.m_qst / (d * L * out.m);
  return out;
}

/** Distribution-free Chebyshev halfwidth a = sqrt(MSE / alpha). */
inline double chebyshev_halfwidth(double mse, double alpha) {
  if (mse < 0.0) throw ValidationError("chebyshev_halfwidth: negative MSE");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw ValidationError("chebyshev_halfwidth: alpha must lie in (0, 1)");
  return std::sqrt(mse / alpha);
}

struct RlcuErrorBound {
  double value;  // min_r b(r)
  double r_min;  // argmin
};

/** Unmitigated RLCU bias envelope b(r) = 2 e^{(beta t)^2 / r} (gamma r + gamma_c (beta t)^2 / r). */
inline double rlcu_bias_envelope(double beta_t, double gamma, double gamma_c,
                                 double r) {
  const double tt2 = beta_t * beta_t;
  return 2.0 * std::exp(tt2 / r) * (gamma * r + gamma_c * tt2 / r);
}

/**
 * Minimize the bias envelope over r > 0 (golden-section). The stationary
 * condition is r^3 - (bt)^2 r^2 - (gc/g)(bt)^2 r - (gc/g)(bt)^4 = 0, whose
 * positive root collapses to r = (beta t)^2 when gamma_c = 0.
 */
inline RlcuErrorBound rlcu_error_bound(double beta_t, double gamma,
                                       double gamma_c) {
  if (gamma <= 0.0) throw ValidationError("rlcu_error_bound: gamma must be > 0");
  if (beta_t <= 0.0) throw ValidationError("rlcu_error_bound: beta t must be > 0");
  double lo = 1e-6, hi = std::max(4.0 * beta_t * beta_t, 8.0);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  auto f = [&](double r) { return rlcu_bias_envelope(beta_t, gamma, gamma_c, r); };
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 300; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  const double r_min = 0.5 * (lo + hi);
  return {f(r_min), r_min};
}

struct CostReport {
  std::string algorithm;     // "trotter" | "rlcu"
  std::string regime;
  double epsilon_b = 0.0;
  double epsilon_c = 0.0;    // trotter only
  double d_star = 0.0;       // trotter only
  double r_star = 0.0;       // rlcu only
  double samples = 0.0;      // M(eps)
  double m_g = 0.0;          // GST budget
  double m_qst = 0.0;        // SNI characterization budget
  double ratio_mg_r = 0.0;   // M_g / R
  double gamma_total = 0.0;  // mitigation overhead at the chosen depth
};

inline const char* to_string(TrotterRegime r) {
  switch (r) {
    case TrotterRegime::below_critical: return "below_critical";
    case TrotterRegime::near_critical: return "near_critical";
    case TrotterRegime::above_critical: return "above_critical";
  }
  return "?";
}

inline const char* to_string(RlcuRegime r) {
  return r == RlcuRegime::optimized ? "optimized" : "shallow";
}

/** Full Trotter cost report at target accuracy eps. */
inline CostReport trotter_cost_report(const TrotterCostInputs& in, double eps) {
  CostReport rep;
  rep.algorithm = "trotter";
  rep.epsilon_b = trotter_error_bound(in);
  rep.epsilon_c = critical_error(in);
  const TrotterSampleCost sc = trotter_samples(in, eps);
  rep.d_star = sc.depth;
  rep.samples = sc.exact;
  rep.regime = to_string(sc.regime);
  const GstRatio gr = gst_ratio_trotter(in, eps);
  rep.m_g = gst_budget(sc.depth * in.L, eps);
  rep.ratio_mg_r = gr.exact;
  rep.gamma_total = std::exp(in.L * sc.depth * in.gamma_prime);
  const double q = 1.0 - std::pow(1.0 - in.gamma, in.L);
  const double s = 4.0 * q * sc.depth + 1e-9;
  rep.m_qst = sni_budgets(q, sc.depth, eps, s, in.L).m_qst;
  return rep;
}

/** Full RLCU cost report at target accuracy eps. */
inline CostReport rlcu_cost_report(const RlcuCostInputs& in, double eps) {
  CostReport rep;
  rep.algorithm = "rlcu";
  const RlcuErrorBound eb =
      rlcu_error_bound(in.t_tilde(), in.gamma_prime, in.gamma_c);
  rep.epsilon_b = eb.value;
  const RlcuRepetition rr = rlcu_optimal_r(in);
  rep.r_star = rr.r;
  rep.regime = to_string(rr.regime);
  rep.samples = rlcu_samples(in, eps, rr.r);
  const RlcuGstCost gc = gst_ratio_rlcu(in, eps);
  rep.m_g = gc.m_g_at_r_star;
  rep.ratio_mg_r = gc.ratio;
  rep.gamma_total = gamma_rlcu(in.t_tilde() / rr.r,
                               static_cast<int>(std::max(1.0, std::round(rr.r))));
  const double s = 4.0 * in.gamma_prime * rr.r + 1.0;
  rep.m_qst = sni_budgets(in.gamma_prime, rr.r, eps, s).m_qst;
  return rep;
}

}  // namespace hamsim
