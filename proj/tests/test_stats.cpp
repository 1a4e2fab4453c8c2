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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "waning/errors.hpp"
#include "waning/model.hpp"
#include "waning/rng.hpp"
#include "waning/simulate.hpp"
#include "waning/stats.hpp"

using namespace waning;

namespace {

const ModelParams kRef(1.0, 0.1, 0.2);

// Evaluates the right-continuous empirical survival step function.
double survival_at(const EmpiricalCcdf& ccdf, double t) {
  double s = 1.0;
  for (const auto& p : ccdf.points) {
    if (p.t <= t) {
      s = p.survival;
    }
  }
  return s;
}

}  // namespace

TEST_CASE("interarrivals from consecutive differences") {
  const EventStream stream{{1.0, 3.0, 6.0}, 6.0, std::nullopt};
  CHECK(interarrivals(stream).values == std::vector<double>{2.0, 3.0});
  CHECK(interarrivals(stream, true).values ==
        std::vector<double>{1.0, 2.0, 3.0});
  CHECK(interarrivals(stream).zero_count == 0);

  const EventStream lone{{5.0}, 5.0, std::nullopt};
  CHECK_THROWS_AS(interarrivals(lone), EmptySampleError);
  CHECK(interarrivals(lone, true).values == std::vector<double>{5.0});
}

TEST_CASE("empirical ccdf point values") {
  const InterarrivalSample sample{{1.0, 2.0, 2.0, 5.0}, 0};
  const EmpiricalCcdf ccdf = empirical_ccdf(sample);
  REQUIRE(ccdf.points.size() == 3);  // distinct values only
  CHECK(ccdf.sample_size == 4);
  CHECK(ccdf.points[0].t == 1.0);
  CHECK(ccdf.points[0].survival == 0.75);
  CHECK(ccdf.points[1].t == 2.0);
  CHECK(ccdf.points[1].survival == 0.25);
  CHECK(ccdf.points[2].t == 5.0);
  CHECK(ccdf.points[2].survival == 0.0);
}

TEST_CASE("degenerate and zero-laden samples") {
  const InterarrivalSample constant{{3.0, 3.0, 3.0}, 0};
  const EmpiricalCcdf single = empirical_ccdf(constant);
  REQUIRE(single.points.size() == 1);
  CHECK(single.points[0].t == 3.0);
  CHECK(single.points[0].survival == 0.0);

  // Zeros are excluded from the curve and from the normalization.
  const InterarrivalSample with_zeros{{0.0, 0.0, 1.0, 2.0, 2.0, 5.0}, 2};
  const EmpiricalCcdf ccdf = empirical_ccdf(with_zeros);
  CHECK(ccdf.sample_size == 4);
  CHECK(ccdf.points[0].survival == 0.75);

  const InterarrivalSample zeros{{0.0, 0.0}, 2};
  CHECK_THROWS_AS(empirical_ccdf(zeros), EmptySampleError);
}

TEST_CASE("empirical survival matches the exponential law") {
  Rng rng(99);
  InterarrivalSample sample;
  for (int i = 0; i < 10000; ++i) {
    sample.values.push_back(rng.exponential());
  }
  const EmpiricalCcdf ccdf = empirical_ccdf(sample);
  CHECK(std::abs(survival_at(ccdf, 1.0) - std::exp(-1.0)) <= 0.015);
}

TEST_CASE("ccdf is monotone and bounded in both modes") {
  Rng rng(123);
  InterarrivalSample sample;
  for (int i = 0; i < 500; ++i) {
    sample.values.push_back(std::floor(rng.exponential() * 8.0) / 8.0);
  }
  for (auto bins : {std::optional<int>{}, std::optional<int>{25}}) {
    const EmpiricalCcdf ccdf = empirical_ccdf(sample, bins);
    double prev_t = -1.0;
    double prev_s = 1.0 + 1e-12;
    for (const auto& p : ccdf.points) {
      CHECK(p.t > prev_t);
      CHECK(p.survival <= prev_s);
      CHECK(p.survival >= 0.0);
      CHECK(p.survival <= 1.0);
      prev_t = p.t;
      prev_s = p.survival;
    }
  }
}

TEST_CASE("log binning lays points geometrically") {
  InterarrivalSample sample;
  for (int i = 1; i <= 200; ++i) {
    sample.values.push_back(0.25 * i);
  }
  const EmpiricalCcdf ccdf = empirical_ccdf(sample, 25);
  REQUIRE(ccdf.points.size() == 25);
  CHECK(ccdf.points.front().t == 0.25);
  CHECK(ccdf.points.back().t == 50.0);
  CHECK(ccdf.points.back().survival == 0.0);
  const double step0 = ccdf.points[1].t / ccdf.points[0].t;
  const double step1 = ccdf.points[13].t / ccdf.points[12].t;
  CHECK(step0 == doctest::Approx(step1).epsilon(1e-9));
  CHECK(kDefaultLogBins == 25);
  CHECK_THROWS_AS(empirical_ccdf(sample, 1), std::invalid_argument);
}

TEST_CASE("one-sample KS statistic on small cases") {
  const auto uniform = [](double x) { return x; };
  CHECK(ks_statistic({0.25, 0.75}, uniform) == doctest::Approx(0.25));
  CHECK(ks_statistic({0.3}, uniform) == doctest::Approx(0.7));
  CHECK_THROWS_AS(ks_statistic({}, uniform), EmptySampleError);
}

TEST_CASE("two-sample KS statistic on small cases") {
  CHECK(ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
  CHECK(ks_two_sample({1.0, 2.0}, {3.0, 4.0}) == 1.0);
  CHECK(ks_two_sample({1.0, 2.0}, {2.0, 3.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_two_sample({}, {1.0}), EmptySampleError);
}

TEST_CASE("critical values") {
  CHECK(ks_critical_1pct(100) == doctest::Approx(0.1628));
  CHECK(ks_two_sample_critical_1pct(100, 100) ==
        doctest::Approx(1.63 * std::sqrt(0.02)));
  CHECK(dkw_bound(100000, 0.01) ==
        doctest::Approx(std::sqrt(std::log(200.0) / 200000.0)));
  CHECK_THROWS_AS(ks_critical_1pct(0), std::invalid_argument);
  CHECK_THROWS_AS(dkw_bound(10, 1.5), std::invalid_argument);
}

TEST_CASE("time-rescaling test accepts the generating model") {
  const auto spec = SimulationSpec::until_count(kRef, 10000, 3);
  const EventStream stream = sample_stream_inversion(spec);
  const GofReport report = rescale_and_test(stream, kRef);
  CHECK(report.sample_size == 10000);
  CHECK(report.critical_value_1pct ==
        doctest::Approx(1.628 / std::sqrt(10000.0)));
  CHECK(report.pass == (report.ks_statistic < report.critical_value_1pct));
  CHECK(report.pass);

  // Deliberately misspecified constant-rate model at lambda(0).
  const GofReport wrong = rescale_and_test(stream, ModelParams(0.0, 1.1, 0.0));
  CHECK_FALSE(wrong.pass);
}

TEST_CASE("rescaling a homogeneous stream is a linear time change") {
  const ModelParams flat(0.0, 2.0, 0.0);
  const auto spec = SimulationSpec::until_count(flat, 500, 21);
  const EventStream stream = sample_stream_inversion(spec);
  const GofReport report = rescale_and_test(stream, flat);

  std::vector<double> gaps = interarrivals(stream, true).values;
  const double direct = ks_statistic(
      std::move(gaps), [](double x) { return -std::expm1(-2.0 * x); });
  CHECK(report.ks_statistic == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("rescaling includes the first waiting time") {
  EventStream stream;
  for (int i = 1; i <= 12; ++i) {
    stream.times.push_back(static_cast<double>(i));
  }
  stream.horizon = 12.0;
  const GofReport report = rescale_and_test(stream, ModelParams(0.0, 1.0, 0.0));
  CHECK(report.sample_size == 12);

  EventStream tiny{{1.0, 2.0, 3.0}, 3.0, std::nullopt};
  CHECK_THROWS_AS(rescale_and_test(tiny, kRef), TooFewEventsError);
}

TEST_CASE("first-gap ccdf converges to the closed-form survival") {
  // 2000 single-event streams; DKW with delta = 0.01 at n = 2000.
  InterarrivalSample sample;
  for (int i = 0; i < 2000; ++i) {
    const auto spec = SimulationSpec::until_count(kRef, 1, derive_seed(55, i));
    sample.values.push_back(sample_stream_inversion(spec).times.front());
  }
  const EmpiricalCcdf ccdf = empirical_ccdf(sample);
  double worst = 0.0;
  for (const auto& p : ccdf.points) {
    worst = std::max(
        worst, std::abs(p.survival - conditional_survival(kRef, 0.0, p.t)));
  }
  CHECK(worst <= 3.0 * dkw_bound(2000, 0.01));
}
