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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eegid/recording.hpp"

namespace eegid {

// Plain-text recording: one channel per line, values separated by commas
// and/or whitespace. Blank lines are ignored. Numbers are parsed
// independently of the C locale.
//
// Errors: kRaggedRows, kNonNumericCell, kInvalidArgument when the row count
// differs from channel_names.size().
EegRecording load_matrix(std::istream& in, double sampling_rate_hz,
                         const std::vector<std::string>& channel_names);

EegRecording load_matrix_file(const std::string& path, double sampling_rate_hz,
                              const std::vector<std::string>& channel_names);

// Writes rec.data in the same format (comma separated, shortest round-trip
// representation of every value).
void write_matrix(std::ostream& out, const EegRecording& rec);

}  // namespace eegid
