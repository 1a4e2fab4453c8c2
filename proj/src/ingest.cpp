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

#include "waning/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "waning/errors.hpp"
#include "waning/rng.hpp"

namespace waning {

namespace {

constexpr double kSecondsPerDay = 86400.0;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    if (s[i] < '0' || s[i] > '9') {
      return false;
    }
  }
  return true;
}

bool looks_like_iso(const std::string& s) {
  return s.size() >= 10 && s[4] == '-' && s[7] == '-' &&
         all_digits(s, 0, 4);
}

// Fractional days since 1970-01-01. Sets *has_time when a time of day is
// present (which refines the jitter resolution to one second).
double parse_iso_record(const std::string& s, std::size_t line,
                        bool* has_time) {
  if (s.size() < 10 || s[4] != '-' || s[7] != '-' || !all_digits(s, 0, 4) ||
      !all_digits(s, 5, 7) || !all_digits(s, 8, 10)) {
    throw ParseError(line, "expected ISO-8601 date (YYYY-MM-DD)");
  }
  const std::chrono::year_month_day ymd{
      std::chrono::year(std::stoi(s.substr(0, 4))),
      std::chrono::month(static_cast<unsigned>(std::stoi(s.substr(5, 2)))),
      std::chrono::day(static_cast<unsigned>(std::stoi(s.substr(8, 2))))};
  if (!ymd.ok()) {
    throw ParseError(line, "invalid calendar date");
  }
  double days = static_cast<double>(
      std::chrono::sys_days(ymd).time_since_epoch().count());

  if (s.size() == 10) {
    return days;
  }
  if ((s[10] != 'T' && s[10] != ' ') || s.size() < 16 ||
      !all_digits(s, 11, 13) || s[13] != ':' || !all_digits(s, 14, 16)) {
    throw ParseError(line, "expected HH:MM after the date");
  }
  const int hh = std::stoi(s.substr(11, 2));
  const int mm = std::stoi(s.substr(14, 2));
  double ss = 0.0;
  if (s.size() > 16) {
    if (s[16] != ':' || s.size() < 19 || !all_digits(s, 17, 19)) {
      throw ParseError(line, "expected :SS after the minutes");
    }
    char* end = nullptr;
    ss = std::strtod(s.c_str() + 17, &end);
    if (end != s.c_str() + s.size()) {
      throw ParseError(line, "trailing characters after the seconds");
    }
  }
  if (hh > 23 || mm > 59 || !(ss >= 0.0 && ss < 60.0)) {
    throw ParseError(line, "time of day out of range");
  }
  *has_time = true;
  return days + (hh * 3600.0 + mm * 60.0 + ss) / kSecondsPerDay;
}

double parse_numeric_record(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) {
    throw ParseError(line, "expected a decimal number of days");
  }
  if (!std::isfinite(v) || v < 0.0) {
    throw ParseError(line, "days must be finite and >= 0");
  }
  return v;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos) {
      return fields;
    }
    start = comma + 1;
  }
}

std::string format_origin_label(double epoch_days, bool has_time) {
  const auto day_count = static_cast<long long>(std::floor(epoch_days));
  const std::chrono::year_month_day ymd{
      std::chrono::sys_days(std::chrono::days(day_count))};
  char buf[40];
  int len = std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u",
                          static_cast<int>(ymd.year()),
                          static_cast<unsigned>(ymd.month()),
                          static_cast<unsigned>(ymd.day()));
  if (has_time) {
    const auto secs = static_cast<long long>(
        std::llround((epoch_days - static_cast<double>(day_count)) *
                     kSecondsPerDay));
    std::snprintf(buf + len, sizeof(buf) - len, "T%02lld:%02lld:%02lld",
                  secs / 3600, secs / 60 % 60, secs % 60);
  }
  return buf;
}

std::string format_numeric_label(double origin) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", origin);
  return buf;
}

}  // namespace

std::string source_format_name(SourceFormat format) {
  switch (format) {
    case SourceFormat::kIso8601Lines:
      return "iso8601_lines";
    case SourceFormat::kNumericLines:
      return "numeric_lines";
    case SourceFormat::kCsvColumn:
      return "csv_column";
  }
  throw std::invalid_argument("unknown source format");
}

IngestedSeries parse_timestamps(const std::string& input,
                                const IngestOptions& options) {
  std::vector<double> vals;
  bool any_iso = false;
  bool any_time_of_day = false;

  std::size_t line_no = 0;
  std::size_t header_line = 0;
  std::size_t column_index = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    const std::size_t eol = input.find('\n', pos);
    const std::string raw =
        input.substr(pos, eol == std::string::npos ? eol : eol - pos);
    pos = eol == std::string::npos ? input.size() + 1 : eol + 1;
    ++line_no;
    const std::string rec = trim(raw);
    if (rec.empty()) {
      continue;
    }

    switch (options.format) {
      case SourceFormat::kIso8601Lines:
        vals.push_back(parse_iso_record(rec, line_no, &any_time_of_day));
        any_iso = true;
        break;
      case SourceFormat::kNumericLines:
        vals.push_back(parse_numeric_record(rec, line_no));
        break;
      case SourceFormat::kCsvColumn: {
        if (options.csv_column.empty()) {
          throw std::invalid_argument("csv input needs a column name");
        }
        const std::vector<std::string> fields = split_csv_row(rec);
        if (header_line == 0) {
          const auto it = std::find(fields.begin(), fields.end(),
                                    options.csv_column);
          if (it == fields.end()) {
            throw ParseError(line_no,
                             "column '" + options.csv_column + "' not found");
          }
          column_index = static_cast<std::size_t>(it - fields.begin());
          header_line = line_no;
          continue;
        }
        if (fields.size() <= column_index) {
          throw ParseError(line_no, "row has too few columns");
        }
        const std::string& cell = fields[column_index];
        if (looks_like_iso(cell)) {
          vals.push_back(parse_iso_record(cell, line_no, &any_time_of_day));
          any_iso = true;
        } else {
          vals.push_back(parse_numeric_record(cell, line_no));
        }
        break;
      }
    }
  }
  if (vals.empty()) {
    throw ParseError(0, "input contains no records");
  }
  if (options.include_first && any_iso) {
    throw std::invalid_argument(
        "include-first needs numeric input measured from a known origin; "
        "calendar timestamps have none");
  }

  IngestedSeries series;
  series.source_format = options.format;
  series.raw_count = vals.size();

  std::stable_sort(vals.begin(), vals.end());

  if (options.dedup == DedupPolicy::kJitter) {
    double resolution = options.jitter_resolution;
    if (any_iso) {
      resolution = any_time_of_day ? 1.0 / kSecondsPerDay : 1.0;
    }
    if (!(resolution > 0.0) || !std::isfinite(resolution)) {
      throw std::invalid_argument("jitter resolution must be positive");
    }
    Rng rng(options.jitter_seed);
    for (std::size_t i = 0; i < vals.size();) {
      std::size_t j = i + 1;
      while (j < vals.size() && vals[j] == vals[i]) {
        ++j;
      }
      if (j - i > 1) {
        for (std::size_t k = i; k < j; ++k) {
          vals[k] += rng.uniform01() * resolution;
        }
      }
      i = j;
    }
    std::sort(vals.begin(), vals.end());
  }
  // Drop whatever ties remain (all of them under kDrop; jitter collisions
  // have probability ~0 but the stream must be strictly increasing).
  const auto last = std::unique(vals.begin(), vals.end());
  series.dropped_duplicates =
      static_cast<std::size_t>(vals.end() - last);
  vals.erase(last, vals.end());

  double origin = 0.0;
  if (options.include_first) {
    if (vals.front() == 0.0) {
      vals.erase(vals.begin());
    }
    series.stream.origin_label = "0";
  } else {
    origin = vals.front();
    vals.erase(vals.begin());
    series.stream.origin_label = any_iso
                                     ? format_origin_label(origin, any_time_of_day)
                                     : format_numeric_label(origin);
  }
  if (vals.empty()) {
    throw EmptySampleError("no events remain after origin handling");
  }

  series.stream.times.reserve(vals.size());
  for (double v : vals) {
    series.stream.times.push_back(v - origin);
  }
  series.stream.horizon =
      options.horizon.value_or(series.stream.times.back());
  series.stream.validate();
  return series;
}

}  // namespace waning
