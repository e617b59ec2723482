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

#include <stdexcept>
#include <string>

namespace eegid {

// Every failure raised by the library carries one of these codes. The C API
// and the CLI map them onto status values and exit codes via error_kind().
enum class Errc {
  kInvalidArgument,
  kIo,
  // io_ingest
  kMalformedHeader,
  kMixedSamplingRates,
  kTruncatedRecord,
  kRaggedRows,
  kNonNumericCell,
  kMissingChannel,
  kWindowOutOfRange,
  kMalformedManifest,
  kMalformedCache,
  // dsp
  kIrrationalRatio,
  kFrequencyOutOfRange,
  kUnstableDesign,
  kInvalidBand,
  kSignalTooShort,
  kRecordingTooShort,
  // connectivity
  kEpochTooShort,
  kDegenerateVariance,
  kLengthMismatch,
  // graph
  kZeroGraph,
  kNoConvergence,
  // svm
  kDimensionMismatch,
  kTooFewRows,
  kSingleClassInput,
  kTooFewClasses,
  kMalformedModel,
  // eval
  kInsufficientEpochs,
  kMissingCondition,
  kUnknownLabel,
};

enum class ErrorKind {
  kUsage,    // bad arguments or configuration
  kData,     // unreadable or inconsistent input data
  kNumeric,  // numerical failure during computation
};

const char* errc_name(Errc code);
ErrorKind error_kind(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  Errc code() const noexcept { return code_; }
  // The message without the leading error name.
  const std::string& detail() const noexcept { return detail_; }
  ErrorKind kind() const noexcept { return error_kind(code_); }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace eegid
