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

#ifndef WANING_MODEL_HPP
#define WANING_MODEL_HPP

#include <optional>
#include <string>

namespace waning {

// Non-homogeneous Poisson process with waning intensity
//
//     lambda(t) = beta + alpha / (b*t + 1),        t >= 0  (time in days)
//
// alpha is the initial extra rate that decays away, b the decay speed
// (1/b is the decay timescale in days), beta the persistent floor rate.
// b = 0 is an explicit degenerate case: a homogeneous process of rate
// alpha + beta. All functions below treat it by exact branch, not by limit.
struct ModelParams {
  double alpha;
  double beta;
  double b;

  // Requires alpha >= 0, beta >= 0, b >= 0, alpha + beta > 0, all finite;
  // throws std::invalid_argument otherwise.
  ModelParams(double alpha, double beta, double b);
};

// lambda(t). Decreasing in t, from alpha + beta at t = 0 towards beta.
// Throws std::domain_error for t < 0.
double intensity(const ModelParams& params, double t);

// Integral of the intensity over [0, t]: the expected number of events by
// time t.
//
//     Lambda(t) = beta*t + (alpha/b) * ln(b*t + 1)      (b > 0)
//               = (alpha + beta) * t                    (b = 0)
//
// Nonnegative, strictly increasing, concave for b > 0. Uses log1p so small
// b*t does not lose precision. Throws std::domain_error for t < 0.
double cumulative_intensity(const ModelParams& params, double t);

// Unique t >= 0 with Lambda(t) = y, used by the inversion sampler and the
// time-rescaling test. Closed forms where they exist (b = 0, alpha = 0,
// beta = 0); otherwise a bracketed Newton iteration on [0, y/beta] accurate
// to |Lambda(t) - y| <= 1e-10 * max(1, y). Throws std::domain_error for
// y < 0.
double inverse_cumulative_intensity(const ModelParams& params, double y);

// P{no event in (x, x+t] | history up to x}, i.e.
// exp(-(Lambda(x+t) - Lambda(x))). For b > 0 evaluated in closed form
//
//     exp(-beta*t) * ((b*(x+t) + 1) / (b*x + 1))^(-alpha/b)
//
// and clamped into [0, 1]. Throws std::domain_error for x < 0 or t < 0.
double conditional_survival(const ModelParams& params, double x, double t);

// Qualitative behaviour of the interarrival-time tail, following the
// boundary cases of the parameter space.
enum class RegimeClass {
  kExponentialBeta,           // alpha = 0: homogeneous, rate beta
  kExponentialAlpha,          // beta = 0, b = 0: homogeneous, rate alpha
  kExponentialAlphaPlusBeta,  // b = 0: homogeneous, rate alpha + beta
  kPureFatTail,               // beta = 0, b > 0: fat tail, no cutoff
  kPowerLawExpCutoff,         // all positive: power law * exponential cutoff
};

RegimeClass classify_regime(const ModelParams& params);

// Stable label for reports: "exponential_beta", ..., "power_law_exp_cutoff".
std::string regime_name(RegimeClass regime);

// Rate of the equivalent homogeneous process for the three exponential
// regimes; nullopt when the process is genuinely non-homogeneous.
std::optional<double> homogeneous_rate(const ModelParams& params);

}  // namespace waning

#endif  // WANING_MODEL_HPP
