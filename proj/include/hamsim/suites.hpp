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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hamsim/cost_model.hpp"
#include "hamsim/experiment.hpp"
#include "hamsim/report.hpp"
#include "hamsim/rlcu.hpp"
#include "hamsim/scenarios.hpp"
#include "hamsim/stats.hpp"

namespace hamsim {

struct SuiteOptions {
  std::uint64_t seed = 0;
  int workers = 1;
  // Scales Monte Carlo sizes down for fast unit runs; validation and
  // acceptance use 1.
  double shot_scale = 1.0;
};

inline constexpr double kRoundoffSlack = 1e-10;

namespace suites {

inline std::uint64_t scaled(double base, double scale) {
  return static_cast<std::uint64_t>(std::max(1.0, base * scale));
}

// --- criterion 1: microstep order scaling -------------------------------

inline Report trotter_order(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "trotter-order";
  rep.seed = opts.seed;
  rep.columns = {"ham", "k", "slope", "target"};
  const std::vector<std::pair<std::string, Hamiltonian>> systems = {
      {"pauli2", pauli2()}, {"heis3", heis3()}};
  for (const auto& [name, h] : systems) {
    for (int k : {1, 2, 4}) {
      const ProductFormula f = build_formula(h, k);
      std::vector<double> deltas, errs;
      for (int j = 0; j < 5; ++j) {
        const double delta = 0.1 * std::pow(2.0, -j);
        deltas.push_back(delta);
        errs.push_back(operator_norm(microstep_unitary(f, h, delta) -
                                     exact_evolution(h, delta)));
      }
      const double slope = fit_loglog_slope(deltas, errs);
      rep.rows.push_back({name, format_double(k), format_double(slope),
                          format_double(k + 1.0)});
      rep.check_close("order[" + name + ",k=" + std::to_string(k) + "]", slope,
                      k + 1.0, 0.15);
    }
  }
  return rep;
}

// --- criterion 2: first-order global bound ------------------------------

inline Report trotter_bias_suite(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "trotter-bias";
  rep.seed = opts.seed;
  rep.columns = {"ham", "t", "N", "tracedist", "exp_bias", "bound"};
  const std::vector<std::pair<std::string, Hamiltonian>> systems = {
      {"pauli2", pauli2()}, {"heis3", heis3()}};
  for (const auto& [name, h] : systems) {
    const double c1 = c1_prefactor(h);
    const Matrix obs = pauli_dense(h.term(h.size() - 1).pauli);
    const DensityMatrix rho0 = DensityMatrix::zero_state(h.n_qubits());
    std::vector<long> grid;
    if (name == "pauli2")
      for (long n = 1; n <= 64; ++n) grid.push_back(n);
    else
      grid = {1, 2, 4, 8, 16, 32, 64};
    for (double t : {0.5, 1.0, 2.0}) {
      const Matrix u = exact_evolution(h, t);
      const DensityMatrix ideal(u * rho0.matrix() * u.adjoint());
      const double ideal_exp = expectation(obs, ideal);
      for (long n : grid) {
        const DensityMatrix evolved = run_trotter(h, t, n, 1, std::nullopt, rho0);
        const double td = trace_distance(ideal, evolved);
        const double eb = std::abs(ideal_exp - expectation(obs, evolved));
        const double bound = c1 * t * t / static_cast<double>(n);
        rep.rows.push_back({name, format_double(t), format_double(n),
                            format_double(td), format_double(eb),
                            format_double(bound)});
        rep.check_upper("first_order[" + name + ",t=" + format_double(t) +
                            ",N=" + std::to_string(n) + "]",
                        td, bound, kRoundoffSlack);
        // Expectation bias obeys the 2x-dominated form in general; recorded
        // against the 1x bound for the reference observable.
        rep.report_only("first_order_expbias[" + name + ",t=" + format_double(t) +
                            ",N=" + std::to_string(n) + "]",
                        eb, bound);
      }
    }
  }
  return rep;
}

// --- criterion 3: noisy-bias bound --------------------------------------

inline Report trotter_noisy(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "trotter-noisy";
  rep.seed = opts.seed;
  rep.columns = {"k", "N", "d", "gamma", "bias", "bound_alg", "bound_total"};
  const Hamiltonian h = pauli2();
  const double t = 1.0;
  const Matrix obs = pauli_dense(PauliString::from_label("ZI"));
  const DensityMatrix rho0 = DensityMatrix::zero_state(2);
  const double big_l = static_cast<double>(h.size());
  for (int k : {1, 2}) {
    const double alpha = trotter_alpha(h, k, t);
    const ProductFormula f = build_formula(h, k);
    for (double gamma : {0.005, 0.01, 0.02}) {
      const NoiseModel nm(gamma, gamma, NoiseFamily::depolarizing, 1);
      for (long n : {1L, 2L, 4L, 8L, 16L, 32L, 64L}) {
        const double d = static_cast<double>(f.layers(n));
        if (d > 64) continue;
        const double bias = trotter_bias(h, t, n, k, obs, rho0, nm);
        const double bound_alg = alpha / std::pow(d, k);
        const double bound = bound_alg + big_l * d * gamma;
        rep.add_row({static_cast<double>(k), static_cast<double>(n), d, gamma,
                     bias, bound_alg, bound});
        rep.check_upper("total_bias[k=" + std::to_string(k) +
                            ",g=" + format_double(gamma) + ",d=" + format_double(d) +
                            "]",
                        bias, bound, kRoundoffSlack);
      }
    }
  }
  return rep;
}

// --- criterion 4: PEC exactness and sampling ----------------------------

inline Report pec_exact(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "pec-exact";
  rep.seed = opts.seed;
  rep.columns = {"circuit", "ideal", "noisy", "exhaustive", "deviation"};
  const DensityMatrix rho1 = DensityMatrix::zero_state(1);
  const DensityMatrix rho2 = DensityMatrix::zero_state(2);
  const Matrix z1 = pauli_dense(PauliString::from_label("Z"));
  const Matrix z2 = pauli_dense(PauliString::from_label("ZI"));
  const std::vector<std::tuple<std::string, NoisyCircuit, Matrix, DensityMatrix>>
      cases = {{"circ4_1q", circ4_1q(), z1, rho1},
               {"circ4_2q", circ4_2q(), z2, rho2}};
  for (const auto& [name, circuit, obs, rho0] : cases) {
    const double ideal = circuit_ideal_expectation(circuit, obs, rho0);
    const double noisy = circuit_noisy_expectation(circuit, obs, rho0);
    const double mitigated = pec_exhaustive(circuit, true_models(circuit), obs, rho0);
    rep.rows.push_back({name, format_double(ideal), format_double(noisy),
                        format_double(mitigated),
                        format_double(std::abs(mitigated - ideal))});
    rep.check_upper("exhaustive_exact[" + name + "]", std::abs(mitigated - ideal),
                    1e-10);
  }
  return rep;
}

inline Report pec_sampled(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "pec-sampled";
  rep.seed = opts.seed;
  rep.columns = {"run", "mean", "stderr", "window", "within"};
  const NoisyCircuit circuit = circ4_1q();
  const Matrix obs = pauli_dense(PauliString::from_label("Z"));
  const DensityMatrix rho0 = DensityMatrix::zero_state(1);
  const auto models = true_models(circuit);
  const double exhaustive = pec_exhaustive(circuit, models, obs, rho0);
  const std::uint64_t shots = scaled(1e5, opts.shot_scale);
  double gamma = 1.0;
  for (const auto& m : models) gamma *= m.gamma();
  const double window = 4.0 * gamma / std::sqrt(static_cast<double>(shots));
  int within = 0;
  const int runs = 40;
  double worst_var = 0.0;
  for (int run = 0; run < runs; ++run) {
    const auto est = pec_estimate(circuit, models, obs, rho0, shots,
                                  opts.seed + 1000 + static_cast<std::uint64_t>(run),
                                  opts.workers);
    const bool ok = std::abs(est.mean - exhaustive) <= window;
    within += ok ? 1 : 0;
    worst_var = std::max(worst_var,
                         est.variance * static_cast<double>(est.shots));
    rep.add_row({static_cast<double>(run), est.mean, est.std_error, window,
                 ok ? 1.0 : 0.0});
  }
  rep.add_check("sampled_within_window_fraction", static_cast<double>(within),
                std::ceil(0.95 * runs), within >= static_cast<int>(std::ceil(0.95 * runs)));
  const double var_slack =
      gamma * gamma * 4.0 * std::sqrt(2.0 / static_cast<double>(shots));
  rep.check_upper("variance_times_M_le_gamma_sq", worst_var,
                  gamma * gamma, var_slack);
  return rep;
}

// --- criterion 5: mismatched-model bias ---------------------------------

inline Report pec_mismatch(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "pec-mismatch";
  rep.seed = opts.seed;
  rep.columns = {"quantity", "value"};
  const double p_true = 0.05;
  const double target = 1e-3;
  const double p_est = calibrated_mismatch_rate(p_true, target);
  const NoisyCircuit circuit = rot10_1q(p_true);
  const auto n_g = static_cast<double>(circuit.gates.size());
  const double dgamma = residual_distance(
      circuit.gates.front().noise,
      StochasticPauliChannel::depolarizing(circuit.gates.front().noise.support(),
                                           p_est));
  const Matrix obs = pauli_dense(PauliString::from_label("Z"));
  const DensityMatrix rho0 = DensityMatrix::zero_state(1);
  const double ideal = circuit_ideal_expectation(circuit, obs, rho0);
  const double mitigated =
      pec_exhaustive(circuit, mismatched_models(circuit, p_est), obs, rho0);
  const double bias = std::abs(mitigated - ideal);
  const double bound = (std::pow(1.0 + 2.0 * dgamma, n_g) - 1.0) / 2.0;

  rep.rows.push_back({"p_est", format_double(p_est)});
  rep.rows.push_back({"delta_gamma", format_double(dgamma)});
  rep.rows.push_back({"bias", format_double(bias)});
  rep.rows.push_back({"bound", format_double(bound)});
  rep.check_close("delta_gamma_calibrated", dgamma, target, 1e-9);
  rep.check_upper("mismatch_bias_le_bound", bias, bound);
  // factor-2-dominated form, valid for every observable/state pair
  rep.check_upper("mismatch_bias_le_2x_bound", bias, 2.0 * bound);

  // Neumann-series overhead surrogate: Gamma of the inverted perturbed
  // channel stays below 1/(1 - 2 mu).
  const auto perturbed = StochasticPauliChannel::depolarizing({0}, p_est);
  const double mu = pauli_channel_distance(perturbed);
  const double g_inv = invert_pauli_channel(perturbed).gamma();
  rep.rows.push_back({"gamma_inverse", format_double(g_inv)});
  rep.check_upper("neumann_gamma_bound", g_inv, 1.0 / (1.0 - 2.0 * mu),
                  kRoundoffSlack);

  // Telescoping accumulation for the unmitigated circuit (factor-2 form).
  const double noisy = circuit_noisy_expectation(circuit, obs, rho0);
  rep.check_upper("unmitigated_bias_le_2Ng_gamma", std::abs(noisy - ideal),
                  2.0 * n_g * p_true);
  return rep;
}

// --- criterion 6: RLCU unbiasedness and overhead ------------------------

inline Report rlcu_unbiased(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "rlcu-unbiased";
  rep.seed = opts.seed;
  rep.columns = {"t_tilde", "r", "mean", "ideal", "window", "gamma_rlcu"};
  const Hamiltonian h = pauli2();
  const Matrix obs = pauli_dense(PauliString::from_label("ZI"));
  const DensityMatrix rho0 = DensityMatrix::zero_state(2);
  const std::uint64_t shots = scaled(1e6, opts.shot_scale);
  const std::vector<std::pair<double, int>> settings = {{1.0, 1}, {1.0, 2}, {2.0, 4}};
  for (const auto& [tt, r] : settings) {
    const double t = tt / h.beta();
    const auto est = run_rlcu_estimate(h, t, r, obs, rho0, std::nullopt, shots,
                                       opts.seed, {false, false, opts.workers});
    const Matrix u = exact_evolution(h, t);
    const double ideal = expectation(obs, DensityMatrix(u * rho0.matrix() * u.adjoint()));
    const double window = 4.0 * est.gamma / std::sqrt(static_cast<double>(shots));
    rep.add_row({tt, static_cast<double>(r), est.mean, ideal, window, est.gamma});
    rep.check_close("rlcu_mean[t~=" + format_double(tt) + ",r=" + std::to_string(r) + "]",
                    est.mean, ideal, window);
  }
  // ||alpha||_1 against an independent factorial-series oracle, and both
  // segment-overhead claims.
  for (double lambda : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
    double oracle = 0.0;
    for (int k = 0; k <= 60; k += 2) {
      const double x = lambda / (k + 1.0);
      oracle += std::pow(lambda, k) / std::tgamma(k + 1.0) * std::sqrt(1.0 + x * x);
    }
    const double val = lcu_one_norm(lambda);
    rep.check_upper("one_norm_series[l=" + format_double(lambda) + "]",
                    std::abs(val - oracle), 1e-10);
    const double gamma_s = val * val;
    rep.check_upper("gamma_s_provable_majorant[l=" + format_double(lambda) + "]",
                    gamma_s, std::exp(2.0 * lambda * lambda), kRoundoffSlack);
    // Source-stated Gamma_S <= e^{lambda^2}: known to fail near lambda = 1;
    // evaluated and reported, never asserted.
    rep.report_only("gamma_s_source_claim[l=" + format_double(lambda) + "]",
                    gamma_s, std::exp(lambda * lambda));
  }
  return rep;
}

// --- criterion 7: Taylor-order moments ----------------------------------

inline Report rlcu_moments(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "rlcu-moments";
  rep.seed = opts.seed;
  rep.columns = {"lambda", "emp_mean", "emp_var", "exact_mean", "exact_var",
                 "mean_bound", "var_bound"};
  const std::uint64_t draws = scaled(1e6, opts.shot_scale);
  for (double lambda : {0.25, 0.5, 1.0}) {
    // exact moments from the normalized series
    const auto pmf = rlcu_order_pmf(lambda, 80);
    double mean = 0.0, second = 0.0, fourth = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      const double k = 2.0 * static_cast<double>(i);
      mean += k * pmf[i];
      second += k * k * pmf[i];
      fourth += k * k * k * k * pmf[i];
    }
    const double var = second - mean * mean;

    std::vector<double> counts(pmf.size(), 0.0);
    double s = 0.0, s2 = 0.0;
    Rng rng(opts.seed, 77 + static_cast<std::uint64_t>(lambda * 1000));
    for (std::uint64_t i = 0; i < draws; ++i) {
      const int k = sample_taylor_order(lambda, rng);
      s += k;
      s2 += static_cast<double>(k) * k;
      const auto bin = static_cast<std::size_t>(k / 2);
      if (bin < counts.size()) counts[bin] += 1.0;
    }
    const auto n = static_cast<double>(draws);
    const double emp_mean = s / n;
    const double emp_var = (s2 - s * s / n) / (n - 1.0);
    const auto bounds = k_moment_bounds(lambda);
    rep.add_row({lambda, emp_mean, emp_var, mean, var, bounds.mean_bound,
                 bounds.var_bound});

    const double se_mean = std::sqrt(var / n);
    // standard error of the sample variance via the fourth central moment
    double m4 = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      const double k = 2.0 * static_cast<double>(i);
      m4 += std::pow(k - mean, 4.0) * pmf[i];
    }
    (void)fourth;
    const double se_var = std::sqrt(std::max(0.0, m4 - var * var) / n);
    const std::string tag = "[l=" + format_double(lambda) + "]";
    rep.check_close("moment_mean" + tag, emp_mean, mean, 4.0 * se_mean);
    rep.check_close("moment_var" + tag, emp_var, var, 4.0 * se_var);
    rep.check_upper("mean_le_theorem" + tag, emp_mean,
                    bounds.mean_bound, 4.0 * se_mean);
    rep.check_upper("var_le_theorem" + tag, emp_var, bounds.var_bound,
                    4.0 * se_var);

    // distribution-level goodness of fit at significance 1e-3
    std::vector<double> expected;
    expected.reserve(pmf.size());
    for (double p : pmf) expected.push_back(p * n);
    const Chi2Result chi2 = chi2_goodness_of_fit(counts, expected);
    rep.add_check("chi2" + tag, chi2.statistic, chi2.critical, chi2.passed);
  }
  return rep;
}

// --- RLCU under noise: bias bound and MSE bounds ------------------------

inline Report rlcu_noisy(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "rlcu-noisy";
  rep.seed = opts.seed;
  rep.columns = {"r", "lambda", "gamma", "mean", "stderr", "gamma_rlcu",
                 "bias_bound"};
  const Hamiltonian h = pauli2();
  const Matrix obs = pauli_dense(PauliString::from_label("ZI"));
  const DensityMatrix rho0 = DensityMatrix::zero_state(2);
  const double tt = 1.0;
  const double t = tt / h.beta();
  const NoiseModel nm(0.01, 0.001, NoiseFamily::depolarizing, 2);
  const std::uint64_t shots = scaled(2e5, opts.shot_scale);
  const Matrix u = exact_evolution(h, t);
  const double ideal = expectation(obs, DensityMatrix(u * rho0.matrix() * u.adjoint()));
  for (int r : {1, 2}) {
    const double lambda = tt / r;
    const auto noisy = run_rlcu_estimate(h, t, r, obs, rho0, nm, shots,
                                         opts.seed, {false, false, opts.workers});
    const double bound = rlcu_bias_bound(h, t, r, nm);
    rep.add_row({static_cast<double>(r), lambda, nm.gamma(), noisy.mean,
                 noisy.std_error, noisy.gamma, bound});
    rep.check_upper("rlcu_noisy_bias[r=" + std::to_string(r) + "]",
                    std::abs(noisy.mean - ideal), bound + 4.0 * noisy.std_error);

    // PEC on top: unbiasedness plus MSE bounds of the cost model.
    RlcuOptions popts{false, true, opts.workers};
    const auto mitigated =
        run_rlcu_estimate(h, t, r, obs, rho0, nm, shots, opts.seed + 17, popts);
    rep.check_close("rlcu_pec_mean[r=" + std::to_string(r) + "]", mitigated.mean,
                    ideal, 4.0 * mitigated.std_error + 1e-6);
    const double mse = mitigated.variance +
                       (mitigated.mean - ideal) * (mitigated.mean - ideal);
    const RlcuCostInputs ci(h.beta(), t, nm.gamma_prime(), nm.gamma_c());
    const double provable =
        rlcu_mse_bound_provable(ci, r, static_cast<double>(shots));
    const double stated = rlcu_mse_bound(ci, r, static_cast<double>(shots));
    rep.check_upper("rlcu_mse_le_provable[r=" + std::to_string(r) + "]", mse,
                    provable);
    // Theorem-form bound as printed: optimistic at lambda ~ 1 (see the
    // segment-overhead claim above); reported, not asserted.
    rep.report_only("rlcu_mse_source_claim[r=" + std::to_string(r) + "]", mse,
                    stated);
  }
  return rep;
}

// --- criterion 9: repetition-number dominance ---------------------------

inline Report rlcu_rstar(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "rlcu-rstar";
  rep.seed = opts.seed;
  rep.columns = {"t_tilde", "gamma_prime", "r_star", "exp_rstar", "exp_tsq"};
  for (double gp : {0.001, 0.005, 0.02, 0.05}) {
    for (double tt : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
      const RlcuCostInputs in(1.0, tt, gp, 0.0);
      const RlcuRepetition rr = rlcu_optimal_r(in);
      const double e_star = rlcu_sample_exponent(in, tt / std::sqrt(2.0 * gp));
      const double e_tsq = rlcu_sample_exponent(in, tt * tt);
      rep.add_row({tt, gp, rr.r, e_star, e_tsq});
      if (std::sqrt(2.0 * gp) * tt >= 1.0)
        rep.check_upper("rstar_dominates[t~=" + format_double(tt) +
                            ",g'=" + format_double(gp) + "]",
                        e_star, e_tsq, 1e-12);
    }
  }
  // pinned comparison: t~ = 20, gamma' = 0.005 -> exponents 4 vs 5
  const RlcuCostInputs in(1.0, 20.0, 0.005, 0.0);
  const double e4 = rlcu_sample_exponent(in, rlcu_optimal_r(in).r);
  const double e5 = rlcu_sample_exponent(in, 400.0);
  rep.check_close("exponent_optimized", e4, 4.0, 1e-12);
  rep.check_close("exponent_unoptimized", e5, 5.0, 1e-12);
  // boundary case: sqrt(2 g') t~ = 1 makes both choices coincide
  const RlcuCostInputs inb(1.0, 10.0, 0.005, 0.0);
  rep.check_close("boundary_r", rlcu_optimal_r(inb).r, 100.0, 1e-9);
  // integer grid argmin agrees with round(r*) or a neighbor
  for (double gp : {0.002, 0.01}) {
    const RlcuCostInputs ing(1.0, 25.0, gp, 0.0);
    double best = 1e300;
    long best_r = 1;
    for (long r = 1; r <= 4000; ++r) {
      const double e = rlcu_sample_exponent(ing, static_cast<double>(r));
      if (e < best) {
        best = e;
        best_r = r;
      }
    }
    const double r_star = 25.0 / std::sqrt(2.0 * gp);
    rep.check_close("integer_argmin[g'=" + format_double(gp) + "]",
                    static_cast<double>(best_r), std::round(r_star), 1.0);
  }
  return rep;
}

// --- criterion 10: SNI estimates and sandwich ---------------------------

inline Report sni_estimate_suite(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "sni-estimate";
  rep.seed = opts.seed;
  rep.columns = {"segments", "mean", "stderr", "gamma", "window"};
  const NoisyCircuit circuit = circ4_1q();
  const Matrix obs = pauli_dense(PauliString::from_label("Z"));
  const DensityMatrix rho0 = DensityMatrix::zero_state(1);
  const double ideal = circuit_ideal_expectation(circuit, obs, rho0);
  const std::uint64_t shots = scaled(2e5, opts.shot_scale);
  std::vector<MitigatedEstimate> ests;
  for (int s : {1, 2}) {
    const SniPlan plan = sni_plan(circuit, s);
    const auto est = sni_estimate(plan, circuit, obs, rho0, shots,
                                  opts.seed + static_cast<std::uint64_t>(s),
                                  opts.workers);
    ests.push_back(est);
    const double window = 4.0 * est.gamma / std::sqrt(static_cast<double>(shots));
    rep.add_row({static_cast<double>(s), est.mean, est.std_error, est.gamma,
                 window});
    rep.check_close("sni_mean[s=" + std::to_string(s) + "]", est.mean, ideal,
                    window);
  }
  rep.check_close("sni_segment_consistency", ests[0].mean, ests[1].mean,
                  4.0 * std::sqrt(ests[0].variance + ests[1].variance));
  return rep;
}

inline Report sni_sandwich(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "sni-sandwich";
  rep.seed = opts.seed;
  rep.columns = {"q", "d", "s", "lower", "exact", "upper"};
  for (double q : {0.001, 0.005, 0.01}) {
    for (double d : {20.0, 100.0, 400.0}) {
      const int s_min = static_cast<int>(std::ceil(2.0 * q * d)) + 1;
      const int s_max = static_cast<int>(4.0 * q * d + 8.0);
      for (int s = s_min; s <= s_max; ++s) {
        const SniOverhead oh = sni_overhead(q, d, static_cast<double>(s));
        rep.add_row({q, d, static_cast<double>(s), oh.lower, oh.exact, oh.upper});
        const std::string tag = "[q=" + format_double(q) + ",d=" + format_double(d) +
                                ",s=" + std::to_string(s) + "]";
        rep.add_check("sandwich_lower" + tag, oh.lower, oh.exact,
                      oh.lower < oh.exact);
        rep.add_check("sandwich_upper" + tag, oh.exact, oh.upper,
                      oh.exact < oh.upper);
      }
      // c = 1/2 segment choice: exact overhead within exp(8qd)
      const SniOverhead oh = sni_overhead(q, d, 4.0 * q * d + 1e-9);
      rep.check_upper("s4qd_bound[q=" + format_double(q) + ",d=" + format_double(d) + "]",
                      oh.exact, std::exp(8.0 * q * d) * (1.0 + 1e-9));
    }
  }
  // pinned values at (q, d, s) = (0.01, 100, 8)
  const SniOverhead oh = sni_overhead(0.01, 100.0, 8.0);
  rep.check_close("pinned_exact", oh.exact, 74.398607467716749, 1e-6);
  rep.check_close("pinned_lower", oh.lower, 54.598150033144236, 1e-9);
  rep.check_close("pinned_upper", oh.upper, 207.12724888983461, 1e-6);
  // characterization-vs-simulation ratio stays inside the x e^{-4x} envelope
  for (double q : {0.001, 0.005, 0.01}) {
    for (double d : {20.0, 100.0, 400.0}) {
      const double gamma = q;  // L = 1 convention here, q = gamma L
      const SniBudgets b = sni_budgets(q, d, 0.1, 4.0 * q * d + 1e-9);
      const double x = q * d;
      rep.check_upper("ratio_envelope[q=" + format_double(q) + ",d=" + format_double(d) + "]",
                      b.ratio, 256.0 * gamma * x * std::exp(-4.0 * x) * (1.0 + 1e-9));
      rep.check_upper("xe4x[q=" + format_double(q) + ",d=" + format_double(d) + "]",
                      x * std::exp(-4.0 * x), 1.0 / (4.0 * std::exp(1.0)),
                      1e-15);
    }
  }
  return rep;
}

// --- criterion 8: optimizer fidelity ------------------------------------

inline Report cost_optimizers(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "cost-optimizers";
  rep.seed = opts.seed;
  rep.columns = {"case", "closed_form", "numeric", "rel_err"};
  Rng rng(opts.seed, 4242);
  auto golden = [](auto&& f, double lo, double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 400; ++it) {
      if (fc < fd) {
        hi = d; d = c; fd = fc; c = hi - gr * (hi - lo); fc = f(c);
      } else {
        lo = c; c = d; fc = fd; d = lo + gr * (hi - lo); fd = f(d);
      }
    }
    return 0.5 * (lo + hi);
  };

  int worst_case_count = 0;
  double worst_rel = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = 0.5 + 49.5 * rng.uniform();
    const int k = std::vector<int>{1, 2, 4}[rng.uniform_int(3)];
    const double L = 1.0 + std::floor(6.0 * rng.uniform());
    const double gp = 1e-4 + rng.uniform() * 0.05;
    const TrotterCostInputs in(alpha, k, L, gp, gp);

    // no-QEM depth: argmin of (alpha/d^k + L d g)^2
    const double closed = trotter_optimal_depth_noqem(in);
    const double numeric = golden(
        [&](double d) {
          const double v = alpha / std::pow(d, k) + L * d * gp;
          return v * v;
        },
        1e-4, closed * 64.0);
    const double rel = std::abs(closed - numeric) / closed;
    worst_rel = std::max(worst_rel, rel);

    // PEC depth: argmin of M(d) = e^{2Ldg}/(eps^2 - alpha^2 d^{-2k})
    const double eps_c = critical_error(in);
    const double eps = eps_c * std::pow(10.0, -1.0 + 2.0 * rng.uniform());
    const double d_pec = trotter_optimal_depth_pec(in, eps);
    const double d_floor = std::pow(alpha / eps, 1.0 / k);
    const double d_num = golden(
        [&](double d) {
          const double denom = eps * eps - alpha * alpha / std::pow(d, 2 * k);
          return denom <= 0.0 ? 1e300
                              : std::exp(2.0 * L * d * gp) / denom;
        },
        d_floor * (1.0 + 1e-9), d_pec * 8.0);
    const double rel2 = std::abs(d_pec - d_num) / d_pec;
    worst_rel = std::max(worst_rel, rel2);
    ++worst_case_count;

    const double resid =
        std::abs(trotter_depth_equation_rhs(in, d_pec) - eps * eps);
    if (trial < 3) {
      rep.add_row({static_cast<double>(trial), closed, numeric, rel});
      rep.check_upper("stationarity_residual[" + std::to_string(trial) + "]",
                      resid, 1e-9 * eps * eps);
    }
  }
  rep.add_check("argmin_agreement_100_tuples", worst_rel, 1e-6,
                worst_rel <= 1e-6);
  (void)worst_case_count;

  // crossover identity at d = k/(gamma' L): the two terms of the depth
  // equation coincide exactly
  for (int k : {1, 2}) {
    const TrotterCostInputs in(1.0, k, 2.0, 0.01, 0.01);
    const double d_c = k / (in.gamma_prime * in.L);
    const double term_pec = k / (in.gamma_prime * in.L * d_c);
    rep.check_close("crossover_identity[k=" + std::to_string(k) + "]",
                    term_pec, 1.0, 1e-12);
    const double eps_at_crossover =
        std::sqrt(trotter_depth_equation_rhs(in, d_c));
    rep.check_close("crossover_eps_sq_ratio[k=" + std::to_string(k) + "]",
                    eps_at_crossover / critical_error(in), std::sqrt(2.0),
                    1e-9);
  }

  // M(eps) branch bracketing at eps = 1e±2 eps_c, asserted at the stated
  // factor 2. The low side is known to sit near factor e (see ledger);
  // recorded honestly either way.
  for (int k : {1, 2}) {
    const TrotterCostInputs in(1.0, k, 2.0, 0.01, 0.01);
    const double eps_c = critical_error(in);
    for (double decade : {-2.0, 2.0}) {
      const double eps = eps_c * std::pow(10.0, decade);
      const TrotterSampleCost sc = trotter_samples(in, eps);
      const double ratio = sc.exact / sc.branch;
      rep.add_row({static_cast<double>(k), eps, sc.exact, ratio});
      const std::string tag = "branch_bracket[k=" + std::to_string(k) +
                              ",eps=1e" + format_double(decade) + "*eps_c]";
      rep.add_check(tag, ratio, 2.0, ratio >= 0.5 && ratio <= 2.0);
    }
    // middle branch pinned value at k = 1
    if (k == 1) {
      const double mid = trotter_samples_branch(in, eps_c, TrotterRegime::near_critical);
      rep.check_close("middle_branch_value", mid,
                      std::exp(2.0) / (eps_c * eps_c), 1e-9);
    }
    // far tail: M eps^2 -> 1
    const double eps_far = 1e3 * eps_c;
    const TrotterSampleCost far = trotter_samples(in, eps_far);
    const double m_eps2 = far.exact * eps_far * eps_far;
    rep.add_check("far_tail_M_eps2[k=" + std::to_string(k) + "]", m_eps2, 1.5,
                  m_eps2 >= 1.0 && m_eps2 <= 1.5);
  }

  // asymptotic depth laws
  {
    const TrotterCostInputs in(1.0, 1, 2.0, 0.01, 0.01);
    const double eps_c = critical_error(in);
    const double d_small = trotter_optimal_depth_pec(in, eps_c * 1e-4);
    rep.check_close("depth_low_eps_limit", d_small / std::pow(1.0 / (eps_c * 1e-4), 1.0),
                    1.0, 1e-3);
    const double d_large = trotter_optimal_depth_pec(in, eps_c * 1e4);
    const double predicted =
        (1.0 / (in.gamma_prime * in.L)) * std::pow(1e-4, 2.0 / 3.0);
    rep.check_close("depth_high_eps_limit", d_large / predicted, 1.0, 1e-2);
  }

  // GST budget and ratio diagnostics
  rep.check_close("gst_budget_pinned", gst_budget(100.0, 0.01, 1.0), 1e8, 1.0);
  {
    const TrotterCostInputs in(1.0, 1, 2.0, 0.01, 0.01);
    const double eps_c = critical_error(in);
    const GstRatio low = gst_ratio_trotter(in, eps_c / 8.0);
    rep.check_close("gst_suppression_factor", low.suppression, std::exp(-16.0),
                    1e-12 * std::exp(-16.0) + 1e-30);
    const GstRatio mid = gst_ratio_trotter(in, eps_c);
    rep.check_close("gst_mid_branch", mid.branch,
                    (1.0 / in.gamma_prime) * std::exp(-2.0), 1e-9);
    const RlcuCostInputs rin(2.0, 0.4, 0.005, 0.0);  // sqrt(2g')t~ < 1
    const RlcuGstCost rc = gst_ratio_rlcu(rin, 0.1);
    rep.check_close("gst_rlcu_shallow_ratio", rc.ratio,
                    rin.t_tilde() * rin.t_tilde(), 1e-12);
  }

  // rlcu_error_bound: closed-form argmin and cubic-root agreement
  {
    const RlcuErrorBound eb = rlcu_error_bound(5.0, 0.01, 0.0);
    rep.check_close("rlcu_bias_argmin_gc0", eb.r_min, 25.0, 1e-4);
    rep.check_close("rlcu_bias_value_gc0", eb.value,
                    2.0 * std::exp(1.0) * 0.01 * 25.0, 1e-8);
    // gamma_c > 0: argmin solves the stationarity cubic
    const double bt = 3.0, g = 0.01, gc = 0.002;
    const RlcuErrorBound eb2 = rlcu_error_bound(bt, g, gc);
    const double T = bt * bt, ratio = gc / g, r = eb2.r_min;
    const double cubic = r * r * r - T * r * r - ratio * T * r - ratio * T * T;
    rep.check_upper("rlcu_bias_cubic_residual", std::abs(cubic), 1e-6 * T * T);
  }

  // Chebyshev halfwidth pinned value
  rep.check_close("chebyshev_pinned", chebyshev_halfwidth(0.01, 0.05),
                  std::sqrt(0.2), 1e-12);
  return rep;
}

// --- criterion 11: Table-1 scaling exponents ----------------------------

inline Report cost_table1(const SuiteOptions& opts) {
  Report rep;
  rep.suite = "cost-table1";
  rep.seed = opts.seed;
  rep.columns = {"k", "slope_eps_b", "target_b", "slope_eps_c", "target_c"};
  for (int k : {1, 2}) {
    std::vector<double> gammas, ebs, ecs;
    for (int i = 0; i <= 8; ++i) {
      const double gamma = 1e-4 * std::pow(10.0, 0.25 * i);
      const double c_pec = 2.0;
      const TrotterCostInputs in(1.0, k, 2.0, gamma, c_pec * gamma);
      gammas.push_back(gamma);
      ebs.push_back(trotter_error_bound(in));
      ecs.push_back(critical_error(in));
    }
    const double slope_b = fit_loglog_slope(gammas, ebs);
    const double slope_c = fit_loglog_slope(gammas, ecs);
    const double kk = k;
    rep.add_row({kk, slope_b, kk / (kk + 1.0), slope_c, kk});
    rep.check_close("slope_eps_b[k=" + std::to_string(k) + "]", slope_b,
                    kk / (kk + 1.0), 0.05);
    rep.check_close("slope_eps_c[k=" + std::to_string(k) + "]", slope_c, kk,
                    0.05);
  }
  return rep;
}

}  // namespace suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "trotter-order", "trotter-bias", "trotter-noisy", "pec-exact",
      "pec-sampled",   "pec-mismatch", "rlcu-unbiased", "rlcu-moments",
      "rlcu-noisy",    "rlcu-rstar",   "sni-estimate",  "sni-sandwich",
      "cost-optimizers", "cost-table1"};
  return names;
}

/** Run one named validation suite; deterministic for a fixed seed. */
inline Report run_suite(const std::string& name, const SuiteOptions& opts = {}) {
  using Fn = std::function<Report(const SuiteOptions&)>;
  static const std::map<std::string, Fn> registry = {
      {"trotter-order", suites::trotter_order},
      {"trotter-bias", suites::trotter_bias_suite},
      {"trotter-noisy", suites::trotter_noisy},
      {"pec-exact", suites::pec_exact},
      {"pec-sampled", suites::pec_sampled},
      {"pec-mismatch", suites::pec_mismatch},
      {"rlcu-unbiased", suites::rlcu_unbiased},
      {"rlcu-moments", suites::rlcu_moments},
      {"rlcu-noisy", suites::rlcu_noisy},
      {"rlcu-rstar", suites::rlcu_rstar},
      {"sni-estimate", suites::sni_estimate_suite},
      {"sni-sandwich", suites::sni_sandwich},
      {"cost-optimizers", suites::cost_optimizers},
      {"cost-table1", suites::cost_table1},
  };
  const auto it = registry.find(name);
  if (it == registry.end()) {
    std::string msg = "unknown suite '" + name + "'; available:";
    for (const auto& n : suite_names()) msg += " " + n;
    throw ConfigError(msg);
  }
  return it->second(opts);
}

}  // namespace hamsim
