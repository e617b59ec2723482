// Copyright 2026 The eegid Authors.
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

#include "eegid/matrix_format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "eegid/error.hpp"

namespace eegid {

namespace {

bool is_separator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';';
}

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
  std::vector<double> row;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && is_separator(*p)) ++p;
    if (p == end) break;
    const char* cell_end = p;
    while (cell_end < end && !is_separator(*cell_end)) ++cell_end;
    double value = 0.0;
    const char* start = (*p == '+') ? p + 1 : p;
    auto [ptr, ec] = std::from_chars(start, cell_end, value);
    if (ec != std::errc() || ptr != cell_end || !std::isfinite(value)) {
      throw Error(Errc::kNonNumericCell, "line " + std::to_string(line_no) + ": '" +
                                             std::string(p, cell_end) + "'");
    }
    row.push_back(value);
    p = cell_end;
  }
  return row;
}

}  // namespace

EegRecording load_matrix(std::istream& in, double sampling_rate_hz,
                         const std::vector<std::string>& channel_names) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto row = parse_row(line, line_no);
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(Errc::kRaggedRows, "line " + std::to_string(line_no) + " has " +
                                         std::to_string(row.size()) + " values, expected " +
                                         std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != channel_names.size()) {
    throw Error(Errc::kInvalidArgument, std::to_string(rows.size()) + " rows for " +
                                            std::to_string(channel_names.size()) + " channel names");
  }
  EegRecording rec;
  rec.channel_names = channel_names;
  rec.sampling_rate_hz = sampling_rate_hz;
  rec.data = Matrix::from_rows(rows);
  validate(rec);
  return rec;
}

EegRecording load_matrix_file(const std::string& path, double sampling_rate_hz,
                              const std::vector<std::string>& channel_names) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "'");
  try {
    return load_matrix(in, sampling_rate_hz, channel_names);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

void write_matrix(std::ostream& out, const EegRecording& rec) {
  char buf[64];
  for (std::size_t r = 0; r < rec.data.rows(); ++r) {
    auto row = rec.data.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.put(',');
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, row[c]);
      out.write(buf, ptr - buf);
    }
    out.put('\n');
  }
}

}  // namespace eegid
