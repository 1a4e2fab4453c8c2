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

#ifndef WANING_STATS_HPP
#define WANING_STATS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "waning/model.hpp"
#include "waning/simulate.hpp"

namespace waning {

// Gaps between consecutive arrivals, in days. zero_count records exact-zero
// gaps (possible when a sample is built from coarse real data rather than a
// valid stream); they stay out of `values`-based tail statistics.
struct InterarrivalSample {
  std::vector<double> values;
  std::size_t zero_count = 0;
};

// With include_first the wait from the origin to the first arrival counts as
// a gap too; correct when t = 0 is a true event or the process start, biased
// for real data whose origin is merely the first observed event. Throws
// EmptySampleError when no gap can be formed.
InterarrivalSample interarrivals(const EventStream& stream,
                                 bool include_first = false);

struct CcdfPoint {
  double t;
  double survival;  // fraction of gaps strictly greater than t
};

// Empirical survival function of the positive gaps. sample_size is the
// number of positive gaps behind the curve (the CCDF denominator).
struct EmpiricalCcdf {
  std::vector<CcdfPoint> points;
  std::size_t sample_size = 0;
};

inline constexpr int kDefaultLogBins = 25;

// Unbinned (log_bins unset): one point per distinct gap value, survival
// evaluated at the value itself, so the largest gap gets survival 0.
// Binned: `log_bins` geometrically spaced abscissae from the smallest to the
// largest gap (log_bins >= 2). Zero gaps are excluded and surface only in
// the sample's zero_count. Throws EmptySampleError if no positive gap.
EmpiricalCcdf empirical_ccdf(const InterarrivalSample& sample,
                             std::optional<int> log_bins = std::nullopt);

// One-sample Kolmogorov-Smirnov distance sup_x |F_n(x) - F(x)| against a
// continuous CDF; evaluates both one-sided gaps at each order statistic.
double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf);

// Two-sample KS distance between empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic 1% critical values: 1.628/sqrt(n) for one sample,
// 1.63*sqrt((n+m)/(n*m)) for two samples.
double ks_critical_1pct(std::size_t n);
double ks_two_sample_critical_1pct(std::size_t n, std::size_t m);

struct GofReport {
  double ks_statistic;
  std::size_t sample_size;
  double critical_value_1pct;
  bool pass;
};

// Time-rescaling goodness of fit: under the hypothesized parameters the
// increments Lambda(S_k) - Lambda(S_{k-1}) (with S_0 = 0, so the first
// arrival contributes) are iid Exp(1); tests them with the one-sample KS at
// the 1% level. Requires >= 10 events (TooFewEventsError below that).
GofReport rescale_and_test(const EventStream& stream,
                           const ModelParams& params);

// Dvoretzky-Kiefer-Wolfowitz envelope half-width: with probability 1-delta
// the empirical CDF of n iid draws stays within this of the truth.
double dkw_bound(std::size_t n, double delta);

}  // namespace waning

#endif  // WANING_STATS_HPP
