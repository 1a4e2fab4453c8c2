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

#ifndef WANING_THEORY_HPP
#define WANING_THEORY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waning/model.hpp"

namespace waning {

// Exact distribution theory for the interarrival times T_{n+1}: the density
// of the n-th arrival, the marginal survival P{T_{n+1} > t}, and its
// power-law-with-exponential-cutoff asymptote
//
//     P{T_{n+1} > t}  ~  c(n) * b^(-alpha/b) * (t + 1/b)^(-alpha/b)
//                        * exp(-beta*t)       as t -> infinity.

// Density of the n-th arrival S_n:
//
//     f_{S_n}(x) = lambda(x) * Lambda(x)^(n-1) / (n-1)! * exp(-Lambda(x)),
//
// evaluated in log space. For the homogeneous special case this is the
// Erlang(n, rate) density. Throws std::domain_error for n = 0 (S_0 = 0 is
// deterministic) or x < 0.
double arrival_time_density(const ModelParams& params, unsigned n, double x);

// P{T_{n+1} > t} by 1-D quadrature: integrates
// f_{S_n}(x) * conditional_survival(x, t) over x in [0, X]. X defaults to
// doubling until exp(-beta*X)*(1 + Lambda(X))^n drops below 1e-12 of the
// running integral, and the omitted mass (exactly Q(n, Lambda(X)), the
// regularized upper incomplete gamma) enters through a bounded tail
// estimate. n = 0 short-circuits to the closed form
// exp(-beta*t)*(b*t+1)^(-alpha/b). The exp(-beta*t) cutoff factors out of
// the integral, so deep-tail values stay accurate far below 1e-300 * that
// factor.
//
// When beta = 0 the integrand has no exponential damping and the automatic
// rule does not apply: a finite `truncation` bound must be supplied
// (UnsupportedConfigError otherwise; n = 0 still works).
double marginal_survival_quadrature(
    const ModelParams& params, unsigned n, double t,
    std::optional<double> truncation = std::nullopt);

struct McSpec {
  std::size_t reps = 100000;
  std::uint64_t seed = 1;
};

struct McEstimate {
  double value;
  double std_error;  // sqrt(p*(1-p)/reps)
};

// P{T_{n+1} > t} estimated from `reps` independent streams, each simulated
// by inversion until arrival n+1. Replication r draws from
// Rng(derive_seed(seed, r)), so the estimate is independent of how
// replications would be scheduled in parallel.
McEstimate marginal_survival_monte_carlo(const ModelParams& params,
                                         unsigned n, double t,
                                         const McSpec& mc = {});

enum class CurveMethod {
  kClosedForm,
  kQuadrature,
  kMonteCarlo,
  kAsymptotic,
};

std::string curve_method_name(CurveMethod method);

// Dispatcher mirroring the two computational methods above.
double marginal_survival(const ModelParams& params, unsigned n, double t,
                         CurveMethod method, const McSpec& mc = {},
                         std::optional<double> truncation = std::nullopt);

// c(n) = integral of exp(-beta*x) * lambda(x) * Lambda(x)^(n-1)/(n-1)! dx
// over [0, inf), to relative tolerance 1e-8. The constant in the asymptote
// genuinely depends on n even though it is conventionally written bare.
// Requires beta > 0 (UnsupportedConfigError: no damping, convergence not
// established) and n >= 1 (std::domain_error).
double asymptotic_constant(const ModelParams& params, unsigned n);

// The asymptote's parameters: evaluates to
// c * b^(-alpha_over_b) * (t + one_over_b)^(-alpha_over_b) * exp(-beta*t).
// prefactor() = c * b^(-alpha_over_b) is the number quoted in fitted forms
// like 1.85*(t + 7.7)^(-0.5)*exp(-0.065*t).
struct AsymptoticForm {
  double c;
  double alpha_over_b;  // power-law exponent gamma
  double one_over_b;    // offset t0, days
  double beta;          // cutoff rate

  AsymptoticForm(double c, double alpha_over_b, double one_over_b,
                 double beta);

  // Form implied by model parameters (requires b > 0) and a precomputed
  // c = asymptotic_constant(params, n).
  static AsymptoticForm from_model(const ModelParams& params, double c);

  // Form quoted as prefactor*(t + t0)^(-gamma)*exp(-beta*t).
  static AsymptoticForm from_prefactor(double prefactor, double gamma,
                                       double t0, double beta);

  double prefactor() const;
};

// Evaluates the asymptote. Deliberately NOT clamped to [0, 1]: it is an
// approximation valid for large t and may exceed 1 near t = 0.
double asymptotic_survival(const AsymptoticForm& form, double t);

struct CurvePoint {
  double t;
  double survival;
};

struct SurvivalCurve {
  unsigned n = 0;
  CurveMethod method = CurveMethod::kQuadrature;
  std::vector<CurvePoint> points;
};

// Tabulates P{T_{n+1} > t} (or its asymptote) on the given abscissae.
// kClosedForm requires n = 0; kAsymptotic computes c(n) internally and
// requires beta > 0 and b > 0.
SurvivalCurve survival_curve(const ModelParams& params, unsigned n,
                             const std::vector<double>& ts, CurveMethod method,
                             const McSpec& mc = {},
                             std::optional<double> truncation = std::nullopt);

}  // namespace waning

#endif  // WANING_THEORY_HPP
