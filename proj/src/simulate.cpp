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

#include "waning/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "waning/rng.hpp"

namespace waning {

void EventStream::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon must be positive and finite");
  }
  double prev = 0.0;
  for (double t : times) {
    if (!std::isfinite(t) || t <= prev) {
      throw std::invalid_argument(
          "event times must be finite, strictly increasing and > 0");
    }
    prev = t;
  }
  if (!times.empty() && times.back() > horizon) {
    throw std::invalid_argument("horizon must be >= the last arrival");
  }
}

SimulationSpec SimulationSpec::until_horizon(const ModelParams& params,
                                             double horizon,
                                             std::uint64_t seed) {
  SimulationSpec spec{params, horizon, std::nullopt, seed};
  spec.validate();
  return spec;
}

SimulationSpec SimulationSpec::until_count(const ModelParams& params,
                                           std::size_t count,
                                           std::uint64_t seed) {
  SimulationSpec spec{params, std::nullopt, count, seed};
  spec.validate();
  return spec;
}

void SimulationSpec::validate() const {
  if (horizon.has_value() == event_count.has_value()) {
    throw std::invalid_argument(
        "exactly one of horizon and event_count must be set");
  }
  if (horizon && (!(*horizon > 0.0) || !std::isfinite(*horizon))) {
    throw std::invalid_argument("horizon must be positive and finite");
  }
  if (event_count && *event_count == 0) {
    throw std::invalid_argument("event_count must be >= 1");
  }
}

EventStream sample_stream_inversion(const SimulationSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  EventStream out;

  double y = 0.0;
  if (spec.horizon) {
    const double y_max = cumulative_intensity(spec.params, *spec.horizon);
    while (true) {
      y += rng.exponential();
      if (y > y_max) {
        break;
      }
      const double t = inverse_cumulative_intensity(spec.params, y);
      out.times.push_back(std::min(t, *spec.horizon));
    }
    out.horizon = *spec.horizon;
  } else {
    out.times.reserve(*spec.event_count);
    for (std::size_t i = 0; i < *spec.event_count; ++i) {
      y += rng.exponential();
      out.times.push_back(inverse_cumulative_intensity(spec.params, y));
    }
    out.horizon = out.times.back();
  }
  out.validate();
  return out;
}

EventStream sample_stream_thinning(const SimulationSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  EventStream out;

  const double majorant = spec.params.alpha + spec.params.beta;
  double t = 0.0;
  if (spec.horizon) {
    while (true) {
      t += rng.exponential(majorant);
      if (t > *spec.horizon) {
        break;
      }
      const double u = rng.uniform01();
      if (u <= intensity(spec.params, t) / majorant) {
        out.times.push_back(t);
      }
    }
    out.horizon = *spec.horizon;
  } else {
    while (out.times.size() < *spec.event_count) {
      t += rng.exponential(majorant);
      const double u = rng.uniform01();
      if (u <= intensity(spec.params, t) / majorant) {
        out.times.push_back(t);
      }
    }
    out.horizon = out.times.back();
  }
  out.validate();
  return out;
}

}  // namespace waning
