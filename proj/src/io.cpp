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

#include "waning/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "waning/errors.hpp"

namespace waning {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string format_stream_csv(const EventStream& stream) {
  std::string out = "time_days\n";
  for (double t : stream.times) {
    out += format_double(t);
    out += '\n';
  }
  return out;
}

std::string format_ccdf_csv(const EmpiricalCcdf& ccdf) {
  std::string out = "t_days,survival\n";
  for (const auto& p : ccdf.points) {
    out += format_double(p.t);
    out += ',';
    out += format_double(p.survival);
    out += '\n';
  }
  return out;
}

std::string format_curve_csv(const SurvivalCurve& curve) {
  const std::string method = curve_method_name(curve.method);
  std::string out = "t_days,survival,method,n\n";
  for (const auto& p : curve.points) {
    out += format_double(p.t);
    out += ',';
    out += format_double(p.survival);
    out += ',';
    out += method;
    out += ',';
    out += std::to_string(curve.n);
    out += '\n';
  }
  return out;
}

std::string format_gof_record(const GofReport& report) {
  std::ostringstream out;
  out << "ks_statistic=" << format_double(report.ks_statistic) << '\n'
      << "sample_size=" << report.sample_size << '\n'
      << "critical_value_1pct=" << format_double(report.critical_value_1pct)
      << '\n'
      << "pass=" << (report.pass ? "true" : "false") << '\n';
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading '" + path + "'");
  }
  return buf.str();
}

void write_text_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open '" + tmp + "' for writing");
    }
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw IoError("failed writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot rename '" + tmp + "' to '" + path +
                  "': " + ec.message());
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string digest_hex(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

}  // namespace waning
