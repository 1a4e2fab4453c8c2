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
#include <string>
#include <vector>

#include "waning/errors.hpp"
#include "waning/ingest.hpp"
#include "waning/io.hpp"

using namespace waning;

namespace {

IngestOptions iso_options() {
  IngestOptions options;
  options.format = SourceFormat::kIso8601Lines;
  return options;
}

IngestOptions numeric_options() {
  IngestOptions options;
  options.format = SourceFormat::kNumericLines;
  return options;
}

}  // namespace

TEST_CASE("dates become fractional days from the earliest record") {
  const IngestedSeries series =
      parse_timestamps("2007-03-15\n2007-03-16\n2007-03-18\n", iso_options());
  CHECK(series.stream.times == std::vector<double>{1.0, 3.0});
  CHECK(series.stream.origin_label == "2007-03-15");
  CHECK(series.raw_count == 3);
  CHECK(series.dropped_duplicates == 0);
  CHECK(series.stream.horizon == 3.0);
  CHECK(series.source_format == SourceFormat::kIso8601Lines);
}

TEST_CASE("datetimes resolve to seconds") {
  const IngestedSeries series = parse_timestamps(
      "2007-03-15T00:00:00\n2007-03-15T12:00:00\n2007-03-16 06:00\n",
      iso_options());
  REQUIRE(series.stream.times.size() == 2);
  CHECK(series.stream.times[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(series.stream.times[1] == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(series.stream.origin_label == "2007-03-15T00:00:00");
}

TEST_CASE("unsorted input is sorted before differencing") {
  const IngestedSeries series =
      parse_timestamps("5\n1\n3\n", numeric_options());
  CHECK(series.stream.times == std::vector<double>{2.0, 4.0});
  CHECK(series.stream.origin_label == "1");
}

TEST_CASE("duplicate drop policy") {
  const IngestedSeries series =
      parse_timestamps("0\n2.5\n2.5\n7\n", numeric_options());
  CHECK(series.stream.times == std::vector<double>{2.5, 7.0});
  CHECK(series.dropped_duplicates == 1);
  CHECK(series.raw_count == 4);
  // raw_count = events + duplicates + the origin record
  CHECK(series.raw_count ==
        series.stream.times.size() + series.dropped_duplicates + 1);
}

TEST_CASE("duplicate jitter policy spreads ties") {
  IngestOptions options = numeric_options();
  options.dedup = DedupPolicy::kJitter;
  options.jitter_resolution = 0.5;
  options.jitter_seed = 7;
  const std::string input = "0\n3\n3\n3\n10\n";
  const IngestedSeries series = parse_timestamps(input, options);
  CHECK(series.dropped_duplicates == 0);
  REQUIRE(series.stream.times.size() == 4);
  double prev = 0.0;
  for (double t : series.stream.times) {
    CHECK(t > prev);
    prev = t;
  }
  // All three tied records stay within the declared resolution.
  for (int i = 0; i < 3; ++i) {
    CHECK(series.stream.times[i] > 3.0);
    CHECK(series.stream.times[i] < 3.5);
  }
  CHECK(series.stream.times[3] == 10.0);
  // Deterministic given the seed.
  const IngestedSeries again = parse_timestamps(input, options);
  CHECK(series.stream.times == again.stream.times);
  IngestOptions other = options;
  other.jitter_seed = 8;
  CHECK(parse_timestamps(input, other).stream.times != series.stream.times);
}

TEST_CASE("date ties jitter within one day") {
  IngestOptions options = iso_options();
  options.dedup = DedupPolicy::kJitter;
  const IngestedSeries series = parse_timestamps(
      "2007-03-15\n2007-03-15\n2007-03-15\n2007-03-20\n", options);
  CHECK(series.dropped_duplicates == 0);
  REQUIRE(series.stream.times.size() == 3);
  CHECK(series.stream.times[0] < 1.0);
  CHECK(series.stream.times[1] < 1.0);
  CHECK(series.stream.times[2] == doctest::Approx(5.0).epsilon(0.25));
}

TEST_CASE("include-first keeps absolute numeric times") {
  IngestOptions options = numeric_options();
  options.include_first = true;
  const IngestedSeries from_zero = parse_timestamps("0\n2.5\n7\n", options);
  CHECK(from_zero.stream.times == std::vector<double>{2.5, 7.0});
  CHECK(from_zero.stream.origin_label == "0");

  const IngestedSeries no_zero = parse_timestamps("1\n2\n3\n", options);
  CHECK(no_zero.stream.times == std::vector<double>{1.0, 2.0, 3.0});

  IngestOptions bad = iso_options();
  bad.include_first = true;
  CHECK_THROWS_AS(parse_timestamps("2007-03-15\n2007-03-16\n", bad),
                  std::invalid_argument);
}

TEST_CASE("csv column extraction") {
  IngestOptions options;
  options.format = SourceFormat::kCsvColumn;
  options.csv_column = "posted";
  const IngestedSeries series = parse_timestamps(
      "id,posted,title\n1,2007-03-15,a\n2,2007-03-17,b\n", options);
  CHECK(series.stream.times == std::vector<double>{2.0});
  CHECK(series.raw_count == 2);

  options.csv_column = "missing";
  CHECK_THROWS_AS(
      parse_timestamps("id,posted\n1,2007-03-15\n", options), ParseError);

  options.csv_column = "posted";
  CHECK_THROWS_AS(parse_timestamps("id,posted\n1\n", options), ParseError);
}

TEST_CASE("csv cells may be numeric") {
  IngestOptions options;
  options.format = SourceFormat::kCsvColumn;
  options.csv_column = "t";
  const IngestedSeries series =
      parse_timestamps("t\n0\n1.5\n4\n", options);
  CHECK(series.stream.times == std::vector<double>{1.5, 4.0});
}

TEST_CASE("parse errors name the offending line") {
  try {
    parse_timestamps("2007-03-15\nnot-a-date\n", iso_options());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_timestamps("2007-02-30\n", iso_options()), ParseError);
  CHECK_THROWS_AS(parse_timestamps("2007-03-15T25:00\n", iso_options()),
                  ParseError);
  CHECK_THROWS_AS(parse_timestamps("-1\n4\n", numeric_options()), ParseError);
  CHECK_THROWS_AS(parse_timestamps("", numeric_options()), ParseError);
  CHECK_THROWS_AS(parse_timestamps("\n  \n", numeric_options()), ParseError);
}

TEST_CASE("a lone record leaves no events") {
  CHECK_THROWS_AS(parse_timestamps("5\n", numeric_options()),
                  EmptySampleError);
}

TEST_CASE("explicit horizon") {
  IngestOptions options = numeric_options();
  options.horizon = 10.0;
  const IngestedSeries series = parse_timestamps("0\n1\n2\n", options);
  CHECK(series.stream.horizon == 10.0);

  options.horizon = 1.5;  // before the last arrival
  CHECK_THROWS_AS(parse_timestamps("0\n1\n2\n", options),
                  std::invalid_argument);
}

TEST_CASE("blank lines and padding are tolerated") {
  const IngestedSeries series = parse_timestamps(
      "\n  2007-03-15\r\n\n2007-03-16\r\n  \n", iso_options());
  CHECK(series.stream.times == std::vector<double>{1.0});
}

TEST_CASE("format names are stable") {
  CHECK(source_format_name(SourceFormat::kIso8601Lines) == "iso8601_lines");
  CHECK(source_format_name(SourceFormat::kNumericLines) == "numeric_lines");
  CHECK(source_format_name(SourceFormat::kCsvColumn) == "csv_column");
}

TEST_CASE("table-scale file counts") {
  std::string lines;
  for (int i = 0; i < 588; ++i) {
    lines += std::to_string(i) + "\n";
  }
  const IngestedSeries series = parse_timestamps(lines, numeric_options());
  CHECK(series.raw_count == 588);
  CHECK(series.stream.times.size() == 587);
}

TEST_CASE("input digests are stable") {
  CHECK(digest_hex("") == "fnv1a64:cbf29ce484222325");
  CHECK(digest_hex("a") != digest_hex("b"));
}
