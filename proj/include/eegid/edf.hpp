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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eegid/recording.hpp"

namespace eegid {

// Decodes a continuous EDF (or EDF+C) file held in memory.
//
// Samples are 16-bit little-endian two's complement values mapped to physical
// units through each signal's digital/physical min/max calibration. Signals
// labelled "EDF Annotations" are dropped. All remaining signals must share one
// sampling rate.
//
// Errors: kMalformedHeader, kMixedSamplingRates, kTruncatedRecord.
EegRecording parse_edf(std::span<const std::uint8_t> bytes);

// Reads a file from disk and parses it; kIo when the file cannot be read.
EegRecording read_edf_file(const std::string& path);

std::vector<std::uint8_t> read_binary_file(const std::string& path);

}  // namespace eegid
