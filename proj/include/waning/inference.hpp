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

#ifndef WANING_INFERENCE_HPP
#define WANING_INFERENCE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "waning/model.hpp"
#include "waning/simulate.hpp"
#include "waning/stats.hpp"

namespace waning {

// Point-process log likelihood of a fully observed stream on [0, horizon]:
//
//     sum_i ln lambda(S_i) - Lambda(horizon).
//
// The horizon term is the probability of silence after the last arrival, so
// two streams with equal arrivals but different horizons have different
// likelihoods.
double log_likelihood(const ModelParams& params, const EventStream& stream);

struct MleFit {
  ModelParams params;
  double log_likelihood;
  bool converged;   // final simplex diameter < 1e-8 in log coordinates
  int iterations;   // total simplex iterations across starts and polish
};

// Maximum-likelihood fit by Nelder-Mead over u = (ln alpha, ln beta, ln b),
// so the positivity constraints hold by construction. Runs a small
// deterministic multistart (the likelihood has a genuine near-ridge between
// alpha and b, and a flat direction on homogeneous data) and polishes the
// best point; the total iteration budget is 10^4. The returned value is
// never worse than the likelihood at `init` (or at the default
// initialization). Exact zeros in `init` are nudged to 1e-8.
//
// Raw (alpha, b) can be weakly identified; judge fits by the implied
// intensity curve, or feed the result to simplify_params for classification.
// Requires >= 20 events (TooFewEventsError).
MleFit fit_mle(const EventStream& stream,
               std::optional<ModelParams> init = std::nullopt);

// Least-squares fit of ln survival against the cutoff power law
//
//     survival(t) ~= prefactor * (t + t0)^(-gamma) * exp(-beta*t),
//
// i.e. the functional form of the large-t asymptote, with
// prefactor = c * b^(-gamma). Recover model parameters via b = 1/t0,
// alpha = gamma/t0.
struct CutoffPowerLawFit {
  double prefactor;
  double gamma;
  double t0;
  double beta;
  double sse;  // sum of squared log residuals at the optimum
  std::size_t n_points;

  ModelParams to_model_params() const;
};

struct CcdfFitOptions {
  // Per-point weights aligned with ccdf.points; empty means equal weights.
  std::vector<double> weights;
  // Points with the largest gap values dropped before fitting; extreme
  // order statistics otherwise dominate the log residuals.
  int exclude_largest = 2;
};

// Minimizes sum_j w_j * [ln s_j - (ln prefactor - gamma*ln(t_j + t0)
// - beta*t_j)]^2 over prefactor > 0, gamma >= 0, t0 > 0, beta >= 0.
// For fixed (t0, beta) the problem is linear in (ln prefactor, gamma) and
// solved exactly; (t0, beta) come from a log-spaced grid, one refinement
// pass, and a local simplex polish, with beta = 0 always among the
// candidates. Deterministic. Requires >= 8 points with survival > 0 and
// >= 4 points after exclusion (InsufficientDataError).
CutoffPowerLawFit fit_ccdf(const EmpiricalCcdf& ccdf,
                           const CcdfFitOptions& options = {});

// Model-selection helper: tries the simpler nested models (drop alpha; then
// drop b; then drop beta, refitting what remains) and returns the simplest
// whose log likelihood is within `delta` of the full fit. Feeding the
// result to classify_regime yields a tail-regime label that ignores
// parameters the data cannot support.
ModelParams simplify_params(const EventStream& stream,
                            const ModelParams& params, double delta = 0.5);

}  // namespace waning

#endif  // WANING_INFERENCE_HPP
