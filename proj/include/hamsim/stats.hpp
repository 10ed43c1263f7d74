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
#include <vector>

#include "hamsim/errors.hpp"

namespace hamsim {

/** Least-squares slope of y against x. */
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ValidationError("fit_slope: need matching series with >= 2 points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/** Log-log slope of |err| against scale. */
inline double fit_loglog_slope(const std::vector<double>& scale,
                               const std::vector<double>& err) {
  std::vector<double> lx, ly;
  lx.reserve(scale.size());
  ly.reserve(err.size());
  for (std::size_t i = 0; i < scale.size(); ++i) {
    if (err[i] <= 0.0)
      throw ValidationError("fit_loglog_slope: nonpositive error sample");
    lx.push_back(std::log(scale[i]));
    ly.push_back(std::log(err[i]));
  }
  return fit_slope(lx, ly);
}

/** Upper-tail chi-square critical values at significance 1e-3. */
inline double chi2_critical_1e3(int dof) {
  static constexpr double table[] = {0,      10.828, 13.816, 16.266, 18.467,
                                     20.515, 22.458, 24.322, 26.124, 27.877,
                                     29.588, 31.264, 32.909, 34.528, 36.123,
                                     37.697};
  if (dof < 1 || dof > 15)
    throw ValidationError("chi2_critical_1e3: dof out of tabulated range");
  return table[dof];
}

struct Chi2Result {
  double statistic = 0.0;
  double critical = 0.0;
  int dof = 0;
  bool passed = false;
};

/**
 * Pearson goodness-of-fit with tail bins merged until every expected count
 * reaches 10; significance fixed at 1e-3.
 */
inline Chi2Result chi2_goodness_of_fit(const std::vector<double>& observed,
                                       const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw ValidationError("chi2_goodness_of_fit: size mismatch");
  std::vector<double> obs, exp;
  double tail_o = 0.0, tail_e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] >= 10.0 && tail_e == 0.0) {
      obs.push_back(observed[i]);
      exp.push_back(expected[i]);
    } else {
      tail_o += observed[i];
      tail_e += expected[i];
    }
  }
  if (tail_e > 0.0) {
    obs.push_back(tail_o);
    exp.push_back(tail_e);
  }
  Chi2Result out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double d = obs[i] - exp[i];
    out.statistic += d * d / exp[i];
  }
  out.dof = static_cast<int>(obs.size()) - 1;
  if (out.dof < 1) out.dof = 1;
  out.critical = chi2_critical_1e3(out.dof);
  out.passed = out.statistic <= out.critical;
  return out;
}

}  // namespace hamsim
