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

#include "waning/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "waning/errors.hpp"
#include "waning/quadrature.hpp"
#include "waning/rng.hpp"

namespace waning {

namespace {

constexpr double kQuadRtol = 1e-10;
constexpr double kTruncationRel = 1e-12;

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0)) {
    throw std::domain_error(std::string(name) + " must be >= 0");
  }
}

// conditional_survival(x, t) with the exp(-beta*t) cutoff factored out;
// always in (0, 1] and independent of x when b = 0.
double survival_ratio(const ModelParams& params, double x, double t) {
  if (params.b == 0.0) {
    return std::exp(-params.alpha * t);
  }
  const double ratio = (params.b * (x + t) + 1.0) / (params.b * x + 1.0);
  return std::pow(ratio, -params.alpha / params.b);
}

// Proportion of f_{S_n} mass beyond X: substituting u = Lambda(x) turns the
// tail integral into the regularized upper incomplete gamma Q(n, Lambda(X)).
double arrival_tail_mass(const ModelParams& params, unsigned n, double x) {
  return boost::math::gamma_q(static_cast<double>(n),
                              cumulative_intensity(params, x));
}

}  // namespace

double arrival_time_density(const ModelParams& params, unsigned n, double x) {
  if (n == 0) {
    throw std::domain_error("arrival_time_density needs n >= 1");
  }
  require_nonnegative(x, "x");
  const double lam = intensity(params, x);
  const double total = cumulative_intensity(params, x);
  if (n == 1) {
    return lam * std::exp(-total);
  }
  if (total == 0.0) {
    return 0.0;
  }
  return lam * std::exp((n - 1) * std::log(total) - total -
                        std::lgamma(static_cast<double>(n)));
}

double marginal_survival_quadrature(const ModelParams& params, unsigned n,
                                    double t,
                                    std::optional<double> truncation) {
  require_nonnegative(t, "t");
  if (n == 0) {
    return conditional_survival(params, 0.0, t);
  }
  if (t == 0.0) {
    return 1.0;
  }
  if (params.beta == 0.0 && !truncation) {
    throw UnsupportedConfigError(
        "marginal_survival quadrature needs beta > 0 or a truncation bound");
  }

  const auto integrand = [&](double x) {
    return arrival_time_density(params, n, x) * survival_ratio(params, x, t);
  };
  auto integrate_to = [&](double x_max) {
    return integrate(integrand, 0.0, x_max, kQuadRtol).value;
  };

  double x_max;
  double body;
  if (truncation) {
    if (!(*truncation > 0.0) || !std::isfinite(*truncation)) {
      throw std::invalid_argument("truncation bound must be positive finite");
    }
    x_max = *truncation;
    body = integrate_to(x_max);
  } else {
    // Double X until the damping envelope exp(-beta*X)*(1 + Lambda(X))^n is
    // negligible next to what has been accumulated so far.
    x_max = inverse_cumulative_intensity(
        params, n + 10.0 * std::sqrt(static_cast<double>(n)) + 10.0);
    body = integrate_to(x_max);
    for (int round = 0; round < 60; ++round) {
      const double envelope_log =
          -params.beta * x_max +
          n * std::log1p(cumulative_intensity(params, x_max));
      if (body > 0.0 &&
          envelope_log < std::log(kTruncationRel * body)) {
        break;
      }
      x_max *= 2.0;
      body = integrate_to(x_max);
    }
  }

  // Bracket the omitted mass: for x >= X the survival ratio sits between its
  // value at X and its x -> infinity limit (1 for b > 0, constant for b = 0).
  const double tail_mass = arrival_tail_mass(params, n, x_max);
  const double ratio_at_edge = survival_ratio(params, x_max, t);
  const double ratio_limit =
      params.b == 0.0 ? ratio_at_edge : 1.0;
  const double tail = tail_mass * 0.5 * (ratio_at_edge + ratio_limit);

  const double value = std::exp(-params.beta * t) * (body + tail);
  return std::clamp(value, 0.0, 1.0);
}

McEstimate marginal_survival_monte_carlo(const ModelParams& params, unsigned n,
                                         double t, const McSpec& mc) {
  require_nonnegative(t, "t");
  if (mc.reps == 0) {
    throw std::invalid_argument("mc reps must be >= 1");
  }
  std::size_t exceed = 0;
  for (std::size_t rep = 0; rep < mc.reps; ++rep) {
    Rng rng(derive_seed(mc.seed, rep));
    double y = 0.0;
    for (unsigned k = 0; k < n; ++k) {
      y += rng.exponential();
    }
    const double s_n = inverse_cumulative_intensity(params, y);
    y += rng.exponential();
    const double s_next = inverse_cumulative_intensity(params, y);
    if (s_next - s_n > t) {
      ++exceed;
    }
  }
  const double p =
      static_cast<double>(exceed) / static_cast<double>(mc.reps);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(mc.reps))};
}

std::string curve_method_name(CurveMethod method) {
  switch (method) {
    case CurveMethod::kClosedForm:
      return "closed_form";
    case CurveMethod::kQuadrature:
      return "quadrature";
    case CurveMethod::kMonteCarlo:
      return "monte_carlo";
    case CurveMethod::kAsymptotic:
      return "asymptotic";
  }
  throw std::invalid_argument("unknown curve method");
}

double marginal_survival(const ModelParams& params, unsigned n, double t,
                         CurveMethod method, const McSpec& mc,
                         std::optional<double> truncation) {
  switch (method) {
    case CurveMethod::kQuadrature:
      return marginal_survival_quadrature(params, n, t, truncation);
    case CurveMethod::kMonteCarlo:
      return marginal_survival_monte_carlo(params, n, t, mc).value;
    default:
      throw std::invalid_argument(
          "marginal_survival expects quadrature or monte_carlo");
  }
}

double asymptotic_constant(const ModelParams& params, unsigned n) {
  if (n == 0) {
    throw std::domain_error("asymptotic_constant needs n >= 1");
  }
  if (params.beta == 0.0) {
    throw UnsupportedConfigError(
        "asymptotic_constant needs beta > 0 for convergence");
  }

  const double lgam = std::lgamma(static_cast<double>(n));
  const auto integrand = [&](double x) {
    const double total = cumulative_intensity(params, x);
    const double weight =
        (n == 1) ? std::exp(-params.beta * x)
                 : (total == 0.0
                        ? 0.0
                        : std::exp((n - 1) * std::log(total) -
                                   params.beta * x - lgam));
    return intensity(params, x) * weight;
  };

  // Lambda(x) <= (alpha+beta)x bounds the tail by
  // ((alpha+beta)/beta)^n * Q(n, beta*X).
  double x_max = (n + 10.0) / params.beta;
  double value = integrate(integrand, 0.0, x_max, 1e-10).value;
  for (int round = 0; round < 60; ++round) {
    const double log_tail_bound =
        n * std::log((params.alpha + params.beta) / params.beta) +
        std::log(boost::math::gamma_q(static_cast<double>(n),
                                      params.beta * x_max));
    if (log_tail_bound < std::log(1e-10 * value)) {
      break;
    }
    x_max *= 2.0;
    value = integrate(integrand, 0.0, x_max, 1e-10).value;
  }
  return value;
}

AsymptoticForm::AsymptoticForm(double c_in, double alpha_over_b_in,
                               double one_over_b_in, double beta_in)
    : c(c_in),
      alpha_over_b(alpha_over_b_in),
      one_over_b(one_over_b_in),
      beta(beta_in) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("c must be positive");
  }
  if (!(alpha_over_b >= 0.0) || !std::isfinite(alpha_over_b)) {
    throw std::invalid_argument("alpha_over_b must be >= 0");
  }
  if (!(one_over_b > 0.0) || !std::isfinite(one_over_b)) {
    throw std::invalid_argument("one_over_b must be positive");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be >= 0");
  }
}

AsymptoticForm AsymptoticForm::from_model(const ModelParams& params,
                                          double c) {
  if (params.b == 0.0) {
    throw std::invalid_argument(
        "the power-law asymptote needs b > 0; b = 0 decays as a pure "
        "exponential");
  }
  return {c, params.alpha / params.b, 1.0 / params.b, params.beta};
}

AsymptoticForm AsymptoticForm::from_prefactor(double prefactor, double gamma,
                                              double t0, double beta) {
  return {prefactor * std::pow(t0, -gamma), gamma, t0, beta};
}

double AsymptoticForm::prefactor() const {
  return c * std::pow(one_over_b, alpha_over_b);
}

double asymptotic_survival(const AsymptoticForm& form, double t) {
  require_nonnegative(t, "t");
  return form.prefactor() * std::pow(t + form.one_over_b, -form.alpha_over_b) *
         std::exp(-form.beta * t);
}

SurvivalCurve survival_curve(const ModelParams& params, unsigned n,
                             const std::vector<double>& ts, CurveMethod method,
                             const McSpec& mc,
                             std::optional<double> truncation) {
  SurvivalCurve curve;
  curve.n = n;
  curve.method = method;
  curve.points.reserve(ts.size());
  switch (method) {
    case CurveMethod::kClosedForm: {
      if (n != 0) {
        throw std::invalid_argument("closed_form curves exist only for n = 0");
      }
      for (double t : ts) {
        curve.points.push_back({t, conditional_survival(params, 0.0, t)});
      }
      break;
    }
    case CurveMethod::kQuadrature: {
      for (double t : ts) {
        curve.points.push_back(
            {t, marginal_survival_quadrature(params, n, t, truncation)});
      }
      break;
    }
    case CurveMethod::kMonteCarlo: {
      for (double t : ts) {
        curve.points.push_back(
            {t, marginal_survival_monte_carlo(params, n, t, mc).value});
      }
      break;
    }
    case CurveMethod::kAsymptotic: {
      if (n == 0) {
        throw std::invalid_argument("the asymptote is defined for n >= 1");
      }
      const AsymptoticForm form =
          AsymptoticForm::from_model(params, asymptotic_constant(params, n));
      for (double t : ts) {
        curve.points.push_back({t, asymptotic_survival(form, t)});
      }
      break;
    }
  }
  return curve;
}

}  // namespace waning
