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

#ifndef WANING_INGEST_HPP
#define WANING_INGEST_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "waning/simulate.hpp"

namespace waning {

enum class SourceFormat {
  kIso8601Lines,  // YYYY-MM-DD, optionally plus T/space HH:MM[:SS[.fff]]
  kNumericLines,  // non-negative decimal days, one per line
  kCsvColumn,     // header row; cells in the named column, ISO or numeric
};

std::string source_format_name(SourceFormat format);

enum class DedupPolicy {
  kDrop,    // keep the first of each tie group, count the rest
  kJitter,  // spread each tie group uniformly within the source resolution
};

struct IngestOptions {
  SourceFormat format = SourceFormat::kNumericLines;
  std::string csv_column;  // required for kCsvColumn

  // With include_first the records are taken as times from a known origin
  // (t = 0): nothing is shifted, a record at exactly 0 becomes the origin,
  // and every positive record is an event. Only meaningful for numeric
  // input; calendar input has no external origin, so ISO + include_first is
  // rejected. Default (off): the earliest record becomes the origin and is
  // excluded from the stream.
  bool include_first = false;

  DedupPolicy dedup = DedupPolicy::kDrop;
  // Jitter is uniform in (0, resolution) days. ISO input overrides this
  // with its own resolution: 1 day for date-only records, 1 second for
  // datetimes.
  double jitter_resolution = 1.0;
  std::uint64_t jitter_seed = 1;

  // Observation window end; defaults to the last arrival.
  std::optional<double> horizon;
};

struct IngestedSeries {
  EventStream stream;
  SourceFormat source_format = SourceFormat::kNumericLines;
  std::size_t raw_count = 0;            // parsed records
  std::size_t dropped_duplicates = 0;
  // raw_count == stream.size() + dropped_duplicates, plus 1 when the
  // earliest record became the origin.
};

// Parses a whole input document into a strictly increasing event stream.
// Throws ParseError (with the 1-based line number) for malformed records or
// empty input, std::invalid_argument for incoherent options, and
// EmptySampleError when no event remains after origin handling.
IngestedSeries parse_timestamps(const std::string& input,
                                const IngestOptions& options);

}  // namespace waning

#endif  // WANING_INGEST_HPP
