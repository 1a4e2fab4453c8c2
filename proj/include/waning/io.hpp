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

#ifndef WANING_IO_HPP
#define WANING_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "waning/simulate.hpp"
#include "waning/stats.hpp"
#include "waning/theory.hpp"

namespace waning {

// All emitted text is UTF-8 with LF line endings; floats use %.15g, which
// round-trips doubles. Writers are pure formatters so byte-level golden
// tests stay trivial.

std::string format_double(double v);  // %.15g

std::string format_stream_csv(const EventStream& stream);   // time_days
std::string format_ccdf_csv(const EmpiricalCcdf& ccdf);     // t_days,survival
std::string format_curve_csv(const SurvivalCurve& curve);   // + method,n
std::string format_gof_record(const GofReport& report);     // key=value lines

std::string read_text_file(const std::string& path);  // IoError on failure

// Writes content to path via a temp file in the same directory plus rename,
// so readers never observe a partial file.
void write_text_atomic(const std::string& path, std::string_view content);

// FNV-1a over raw bytes; identifies fit inputs in result records.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);  // "fnv1a64:" + 16 hex chars

}  // namespace waning

#endif  // WANING_IO_HPP
