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

#include "waning/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "waning/errors.hpp"
#include "waning/optimize.hpp"

namespace waning {

namespace {

constexpr double kTinyParam = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

double objective_neg_ll(const std::vector<double>& u,
                        const EventStream& stream) {
  const ModelParams params(std::exp(u[0]), std::exp(u[1]), std::exp(u[2]));
  const double ll = log_likelihood(params, stream);
  return std::isfinite(ll) ? -ll : kInf;
}

std::vector<double> log_point(double alpha, double beta, double b) {
  return {std::log(std::max(alpha, kTinyParam)),
          std::log(std::max(beta, kTinyParam)),
          std::log(std::max(b, kTinyParam))};
}

// Geometric grid from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) {
    out.push_back(i + 1 == count ? hi : lo * std::exp(step * i));
  }
  return out;
}

}  // namespace

double log_likelihood(const ModelParams& params, const EventStream& stream) {
  stream.validate();
  double sum = 0.0;
  for (double t : stream.times) {
    sum += std::log(intensity(params, t));
  }
  return sum - cumulative_intensity(params, stream.horizon);
}

MleFit fit_mle(const EventStream& stream, std::optional<ModelParams> init) {
  stream.validate();
  const std::size_t n = stream.size();
  if (n < 20) {
    throw TooFewEventsError("fit_mle needs >= 20 events");
  }

  const double horizon = stream.horizon;
  const double rate = static_cast<double>(n) / horizon;
  const double beta0 = 0.5 * rate;
  const double b0 = 10.0 / horizon;
  // Early-time event rate over the first decile of events fixes lambda(0).
  const std::size_t decile = std::max<std::size_t>(1, n / 10);
  const double rate_early =
      static_cast<double>(decile) / stream.times[decile - 1];
  const double alpha0 = std::max(rate_early - beta0, 0.01 * beta0);

  std::vector<std::vector<double>> starts;
  if (init) {
    starts.push_back(log_point(init->alpha, init->beta, init->b));
  }
  starts.push_back(log_point(alpha0, beta0, b0));
  starts.push_back(log_point(4.0 * alpha0, beta0, 4.0 * b0));
  starts.push_back(log_point(0.25 * alpha0, beta0, 0.25 * b0));
  // Homogeneous-biased start: on near-constant-rate data the likelihood is
  // flat in the alpha/beta split, and this start parks the fit on the
  // beta-carrying end of that plateau.
  starts.push_back(log_point(0.01 * rate, rate, b0));

  const auto objective = [&](const std::vector<double>& u) {
    return objective_neg_ll(u, stream);
  };

  // Budget: 10^4 simplex iterations across every stage.
  const int per_start =
      static_cast<int>((10000 - 2000) / starts.size());
  NelderMeadOptions coarse;
  coarse.max_iter = per_start;
  int iterations = 0;
  NelderMeadResult best{starts.front(), kInf, false, 0};
  for (const auto& start : starts) {
    NelderMeadResult run = nelder_mead(objective, start, 0.7, coarse);
    iterations += run.iterations;
    if (run.value < best.value) {
      best = std::move(run);
    }
  }

  NelderMeadOptions fine;
  fine.max_iter = 2000;
  NelderMeadResult polish = nelder_mead(objective, best.x, 0.05, fine);
  iterations += polish.iterations;
  if (polish.value > best.value) {
    polish.x = best.x;  // never regress on the multistart winner
    polish.value = best.value;
  }

  const ModelParams fitted(std::exp(polish.x[0]), std::exp(polish.x[1]),
                           std::exp(polish.x[2]));
  return {fitted, -polish.value, polish.converged, iterations};
}

ModelParams CutoffPowerLawFit::to_model_params() const {
  return ModelParams(gamma / t0, beta, 1.0 / t0);
}

namespace {

struct LogLogPoint {
  double t;
  double log_survival;
  double weight;
};

struct InnerSolution {
  double log_prefactor;
  double gamma;
  double sse;
};

// For fixed (t0, beta) the objective is an exact weighted linear regression
// of z = ln s + beta*t on -ln(t + t0), with the slope clamped to gamma >= 0.
InnerSolution solve_linear(const std::vector<LogLogPoint>& pts, double t0,
                           double beta) {
  double wsum = 0.0, xm = 0.0, zm = 0.0;
  for (const auto& p : pts) {
    const double x = std::log(p.t + t0);
    const double z = p.log_survival + beta * p.t;
    wsum += p.weight;
    xm += p.weight * x;
    zm += p.weight * z;
  }
  xm /= wsum;
  zm /= wsum;

  double sxx = 0.0, sxz = 0.0;
  for (const auto& p : pts) {
    const double x = std::log(p.t + t0) - xm;
    const double z = p.log_survival + beta * p.t - zm;
    sxx += p.weight * x * x;
    sxz += p.weight * x * z;
  }
  const double slope = sxx > 0.0 ? sxz / sxx : 0.0;
  const double gamma = std::max(0.0, -slope);

  // Re-center the intercept for the (possibly clamped) slope.
  double a = 0.0;
  for (const auto& p : pts) {
    a += p.weight * (p.log_survival + beta * p.t + gamma * std::log(p.t + t0));
  }
  a /= wsum;

  double sse = 0.0;
  for (const auto& p : pts) {
    const double r =
        p.log_survival + beta * p.t + gamma * std::log(p.t + t0) - a;
    sse += p.weight * r * r;
  }
  return {a, gamma, sse};
}

}  // namespace

CutoffPowerLawFit fit_ccdf(const EmpiricalCcdf& ccdf,
                           const CcdfFitOptions& options) {
  if (!options.weights.empty() &&
      options.weights.size() != ccdf.points.size()) {
    throw std::invalid_argument("weights must align with ccdf.points");
  }
  if (options.exclude_largest < 0) {
    throw std::invalid_argument("exclude_largest must be >= 0");
  }

  std::vector<LogLogPoint> pts;
  pts.reserve(ccdf.points.size());
  for (std::size_t i = 0; i < ccdf.points.size(); ++i) {
    const auto& p = ccdf.points[i];
    const double w = options.weights.empty() ? 1.0 : options.weights[i];
    if (!(w >= 0.0)) {
      throw std::invalid_argument("weights must be >= 0");
    }
    if (p.survival > 0.0 && p.t > 0.0 && w > 0.0) {
      pts.push_back({p.t, std::log(p.survival), w});
    }
  }
  if (pts.size() < 8) {
    throw InsufficientDataError("fit_ccdf needs >= 8 points with survival > 0");
  }
  std::sort(pts.begin(), pts.end(),
            [](const LogLogPoint& a, const LogLogPoint& b) { return a.t < b.t; });
  if (pts.size() < static_cast<std::size_t>(options.exclude_largest) + 4) {
    throw InsufficientDataError("fit_ccdf: too few points after exclusion");
  }
  pts.resize(pts.size() - options.exclude_largest);

  const double t_max = pts.back().t;
  const double t_med = pts[pts.size() / 2].t;

  double best_sse = kInf;
  double best_t0 = t_med;
  double best_beta = 0.0;
  InnerSolution best_inner{0.0, 0.0, kInf};
  const auto consider = [&](double t0, double beta) {
    const InnerSolution inner = solve_linear(pts, t0, beta);
    if (inner.sse < best_sse) {
      best_sse = inner.sse;
      best_t0 = t0;
      best_beta = beta;
      best_inner = inner;
    }
  };

  // Coarse grid, then one zoom around the winner.
  std::vector<double> beta_grid = {0.0};
  for (double beta : log_spaced(0.01 / t_max, 100.0 / t_max, 40)) {
    beta_grid.push_back(beta);
  }
  for (double t0 : log_spaced(0.01 * t_med, 100.0 * t_max, 40)) {
    for (double beta : beta_grid) {
      consider(t0, beta);
    }
  }

  const double beta_center = std::max(best_beta, 0.01 / t_max);
  std::vector<double> beta_zoom = {0.0};
  for (double beta : log_spaced(0.25 * beta_center, 4.0 * beta_center, 21)) {
    beta_zoom.push_back(beta);
  }
  for (double t0 : log_spaced(0.25 * best_t0, 4.0 * best_t0, 21)) {
    for (double beta : beta_zoom) {
      consider(t0, beta);
    }
  }

  // Local polish in (ln t0, ln beta); the exact beta = 0 boundary is kept
  // alive by the snap below.
  const double beta_floor = 1e-12 / t_max;
  NelderMeadOptions opts;
  opts.max_iter = 4000;
  const NelderMeadResult polish = nelder_mead(
      [&](const std::vector<double>& u) {
        return solve_linear(pts, std::exp(u[0]), std::exp(u[1])).sse;
      },
      {std::log(best_t0), std::log(std::max(best_beta, beta_floor))}, 0.3,
      opts);
  if (polish.value < best_sse) {
    consider(std::exp(polish.x[0]), std::exp(polish.x[1]));
  }
  // Snap negligible cutoffs to an exact zero when that costs nothing. The
  // absolute term keeps the comparison meaningful when both residuals are
  // down at roundoff level (noiseless inputs).
  if (best_beta > 0.0) {
    const InnerSolution flat = solve_linear(pts, best_t0, 0.0);
    const double snap_tol =
        std::max(best_sse * 1e-9, 1e-24 * static_cast<double>(pts.size()));
    if (flat.sse <= best_sse + snap_tol) {
      best_beta = 0.0;
      best_sse = flat.sse;
      best_inner = flat;
    }
  }

  CutoffPowerLawFit fit;
  fit.prefactor = std::exp(best_inner.log_prefactor);
  fit.gamma = best_inner.gamma;
  fit.t0 = best_t0;
  fit.beta = best_beta;
  fit.sse = best_sse;
  fit.n_points = pts.size();
  return fit;
}

ModelParams simplify_params(const EventStream& stream,
                            const ModelParams& params, double delta) {
  stream.validate();
  const double full = log_likelihood(params, stream);
  const double rate =
      static_cast<double>(stream.size()) / stream.horizon;

  // Simplest first: pure homogeneous (drop alpha, and b with it).
  const ModelParams homogeneous(0.0, rate, 0.0);
  if (full - log_likelihood(homogeneous, stream) < delta) {
    return homogeneous;
  }

  // Drop b: rate alpha + beta is then sufficient; keep the split, rescale
  // to the analytic optimum N/T.
  if (params.b > 0.0) {
    const double scale = rate / (params.alpha + params.beta);
    const ModelParams no_decay(params.alpha * scale, params.beta * scale, 0.0);
    if (full - log_likelihood(no_decay, stream) < delta) {
      return no_decay;
    }
  }

  // Drop beta: refit (alpha, b) under beta = 0.
  if (params.beta > 0.0 && params.b > 0.0) {
    NelderMeadOptions opts;
    opts.max_iter = 2000;
    const NelderMeadResult refit = nelder_mead(
        [&](const std::vector<double>& u) {
          const ModelParams p(std::exp(u[0]), 0.0, std::exp(u[1]));
          const double ll = log_likelihood(p, stream);
          return std::isfinite(ll) ? -ll : kInf;
        },
        {std::log(std::max(params.alpha, kTinyParam)),
         std::log(std::max(params.b, kTinyParam))},
        0.5, opts);
    if (full + refit.value < delta) {
      return ModelParams(std::exp(refit.x[0]), 0.0, std::exp(refit.x[1]));
    }
  }
  return params;
}

}  // namespace waning
