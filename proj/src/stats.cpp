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

#include "waning/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "waning/errors.hpp"

namespace waning {

InterarrivalSample interarrivals(const EventStream& stream,
                                 bool include_first) {
  stream.validate();
  InterarrivalSample sample;
  const auto& t = stream.times;
  if (t.size() < (include_first ? 1u : 2u)) {
    throw EmptySampleError("stream has no interarrival gap");
  }
  sample.values.reserve(t.size());
  if (include_first) {
    sample.values.push_back(t.front());
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    sample.values.push_back(t[i] - t[i - 1]);
  }
  for (double v : sample.values) {
    if (v == 0.0) {
      ++sample.zero_count;
    }
  }
  return sample;
}

EmpiricalCcdf empirical_ccdf(const InterarrivalSample& sample,
                             std::optional<int> log_bins) {
  std::vector<double> gaps;
  gaps.reserve(sample.values.size());
  for (double v : sample.values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("gaps must be finite and >= 0");
    }
    if (v > 0.0) {
      gaps.push_back(v);
    }
  }
  if (gaps.empty()) {
    throw EmptySampleError("no positive gaps");
  }
  std::sort(gaps.begin(), gaps.end());

  const double n = static_cast<double>(gaps.size());
  auto survival_at = [&](double t) {
    const auto it = std::upper_bound(gaps.begin(), gaps.end(), t);
    return static_cast<double>(gaps.end() - it) / n;
  };

  EmpiricalCcdf ccdf;
  ccdf.sample_size = gaps.size();
  const double lo = gaps.front();
  const double hi = gaps.back();

  if (!log_bins) {
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      if (i + 1 == gaps.size() || gaps[i + 1] != gaps[i]) {
        ccdf.points.push_back({gaps[i], survival_at(gaps[i])});
      }
    }
    return ccdf;
  }

  const int k = *log_bins;
  if (k < 2) {
    throw std::invalid_argument("log_bins must be >= 2");
  }
  if (lo == hi) {
    ccdf.points.push_back({hi, 0.0});
    return ccdf;
  }
  const double log_step = std::log(hi / lo) / (k - 1);
  for (int i = 0; i < k; ++i) {
    const double t = (i + 1 == k) ? hi : lo * std::exp(log_step * i);
    ccdf.points.push_back({t, survival_at(t)});
  }
  return ccdf;
}

double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf) {
  if (values.empty()) {
    throw EmptySampleError("KS statistic of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max(d, (i + 1) / n - f);
    d = std::max(d, f - i / n);
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw EmptySampleError("two-sample KS with an empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) {
      ++i;
    }
    while (j < b.size() && b[j] <= x) {
      ++j;
    }
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("n must be >= 1");
  }
  return 1.628 / std::sqrt(static_cast<double>(n));
}

double ks_two_sample_critical_1pct(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) {
    throw std::invalid_argument("n and m must be >= 1");
  }
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return 1.63 * std::sqrt((nn + mm) / (nn * mm));
}

GofReport rescale_and_test(const EventStream& stream,
                           const ModelParams& params) {
  stream.validate();
  if (stream.size() < 10) {
    throw TooFewEventsError("time-rescaling test needs >= 10 events");
  }
  std::vector<double> rescaled;
  rescaled.reserve(stream.size());
  double prev = 0.0;
  for (double t : stream.times) {
    const double y = cumulative_intensity(params, t);
    rescaled.push_back(y - prev);
    prev = y;
  }
  GofReport report;
  report.sample_size = rescaled.size();
  report.ks_statistic = ks_statistic(
      std::move(rescaled), [](double x) { return -std::expm1(-x); });
  report.critical_value_1pct = ks_critical_1pct(report.sample_size);
  report.pass = report.ks_statistic < report.critical_value_1pct;
  return report;
}

double dkw_bound(std::size_t n, double delta) {
  if (n == 0) {
    throw std::invalid_argument("n must be >= 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace waning
