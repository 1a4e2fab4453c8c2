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

#ifndef WANING_SIMULATE_HPP
#define WANING_SIMULATE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waning/model.hpp"

namespace waning {

// A realized point process on [0, horizon], times in days since the origin,
// strictly increasing and strictly positive. `horizon` is the observation
// window end (>= last arrival), which the likelihood needs: "nothing after
// the last event until T" is information.
struct EventStream {
  std::vector<double> times;
  double horizon = 0.0;
  std::optional<std::string> origin_label;  // e.g. ISO date of t = 0

  std::size_t size() const { return times.size(); }

  // Throws std::invalid_argument if times are not strictly increasing and
  // positive, or horizon < last arrival, or horizon <= 0.
  void validate() const;
};

// Stopping rule: exactly one of `horizon` (observe [0, T]) or `event_count`
// (stop at the N-th arrival; the realized horizon is then that arrival).
struct SimulationSpec {
  ModelParams params;
  std::optional<double> horizon;
  std::optional<std::size_t> event_count;
  std::uint64_t seed = 1;

  static SimulationSpec until_horizon(const ModelParams& params,
                                      double horizon, std::uint64_t seed);
  static SimulationSpec until_count(const ModelParams& params,
                                    std::size_t count, std::uint64_t seed);

  void validate() const;
};

// Exact inversion sampling: cumulative waiting levels y_k = y_{k-1} + E_k
// with E_k ~ Exp(1), arrivals S_k = Lambda^{-1}(y_k). Consumes one engine
// draw per arrival (including the one that overshoots the horizon).
EventStream sample_stream_inversion(const SimulationSpec& spec);

// Thinning (Ogata/Lewis-Shedler) under the global majorant
// lambda_bar = alpha + beta = lambda(0). Per proposal consumes one
// exponential and then one uniform, in that order, whether or not the
// proposal is accepted.
EventStream sample_stream_thinning(const SimulationSpec& spec);

}  // namespace waning

#endif  // WANING_SIMULATE_HPP
