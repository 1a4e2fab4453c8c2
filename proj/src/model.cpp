// Copyright 2026 The waning authors.
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

#include "waning/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace waning {

namespace {

constexpr double kInverseRtol = 1e-10;
constexpr int kInverseMaxIter = 100;

void require_nonnegative_time(double t, const char* name) {
  if (!(t >= 0.0)) {
    throw std::domain_error(std::string(name) + " must be >= 0");
  }
}

}  // namespace

ModelParams::ModelParams(double alpha_in, double beta_in, double b_in)
    : alpha(alpha_in), beta(beta_in), b(b_in) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(b)) {
    throw std::invalid_argument("model parameters must be finite");
  }
  if (alpha < 0.0 || beta < 0.0 || b < 0.0) {
    throw std::invalid_argument("model parameters must be >= 0");
  }
  if (alpha + beta <= 0.0) {
    throw std::invalid_argument("alpha + beta must be > 0");
  }
}

double intensity(const ModelParams& params, double t) {
  require_nonnegative_time(t, "t");
  return params.beta + params.alpha / (params.b * t + 1.0);
}

double cumulative_intensity(const ModelParams& params, double t) {
  require_nonnegative_time(t, "t");
  if (params.b == 0.0) {
    return (params.alpha + params.beta) * t;
  }
  // Skip the linear term when beta == 0 so t == +inf (an overflowed inverse)
  // yields +inf rather than 0 * inf == NaN.
  const double linear = params.beta == 0.0 ? 0.0 : params.beta * t;
  return linear + (params.alpha / params.b) * std::log1p(params.b * t);
}

double inverse_cumulative_intensity(const ModelParams& params, double y) {
  if (!std::isfinite(y) || y < 0.0) {
    throw std::domain_error("y must be finite and >= 0");
  }
  if (y == 0.0) {
    return 0.0;
  }
  if (params.b == 0.0) {
    return y / (params.alpha + params.beta);
  }
  if (params.alpha == 0.0) {
    return y / params.beta;
  }
  if (params.beta == 0.0) {
    // y = (alpha/b) * ln(b*t + 1)
    return std::expm1(y * params.b / params.alpha) / params.b;
  }

  // Lambda is concave and increasing, so beta*t <= Lambda(t) brackets the
  // root in [0, y/beta] and Newton from the upper end first undershoots,
  // then climbs monotonically. The bisection fallback never fires in
  // practice but keeps the bracket authoritative.
  double lo = 0.0;
  double hi = y / params.beta;
  double t = hi;
  const double tol = kInverseRtol * std::max(1.0, y);
  for (int iter = 0; iter < kInverseMaxIter; ++iter) {
    const double g = cumulative_intensity(params, t) - y;
    if (std::abs(g) <= tol) {
      return t;
    }
    (g < 0.0 ? lo : hi) = t;
    const double step = t - g / intensity(params, t);
    t = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
  }
  return t;
}

double conditional_survival(const ModelParams& params, double x, double t) {
  require_nonnegative_time(x, "x");
  require_nonnegative_time(t, "t");
  double s;
  if (params.b == 0.0) {
    s = std::exp(-(params.alpha + params.beta) * t);
  } else {
    const double ratio = (params.b * (x + t) + 1.0) / (params.b * x + 1.0);
    s = std::exp(-params.beta * t) *
        std::pow(ratio, -params.alpha / params.b);
  }
  return std::clamp(s, 0.0, 1.0);
}

RegimeClass classify_regime(const ModelParams& params) {
  if (params.alpha == 0.0) {
    return RegimeClass::kExponentialBeta;
  }
  if (params.b == 0.0) {
    return params.beta == 0.0 ? RegimeClass::kExponentialAlpha
                              : RegimeClass::kExponentialAlphaPlusBeta;
  }
  return params.beta == 0.0 ? RegimeClass::kPureFatTail
                            : RegimeClass::kPowerLawExpCutoff;
}

std::string regime_name(RegimeClass regime) {
  switch (regime) {
    case RegimeClass::kExponentialBeta:
      return "exponential_beta";
    case RegimeClass::kExponentialAlpha:
      return "exponential_alpha";
    case RegimeClass::kExponentialAlphaPlusBeta:
      return "exponential_alpha_plus_beta";
    case RegimeClass::kPureFatTail:
      return "pure_fat_tail";
    case RegimeClass::kPowerLawExpCutoff:
      return "power_law_exp_cutoff";
  }
  throw std::invalid_argument("unknown regime");
}

std::optional<double> homogeneous_rate(const ModelParams& params) {
  switch (classify_regime(params)) {
    case RegimeClass::kExponentialBeta:
      return params.beta;
    case RegimeClass::kExponentialAlpha:
    case RegimeClass::kExponentialAlphaPlusBeta:
      return params.alpha + params.beta;
    default:
      return std::nullopt;
  }
}

}  // namespace waning
