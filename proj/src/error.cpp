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

#include "eegid/error.hpp"

namespace eegid {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIo: return "IoError";
    case Errc::kMalformedHeader: return "MalformedHeader";
    case Errc::kMixedSamplingRates: return "MixedSamplingRates";
    case Errc::kTruncatedRecord: return "TruncatedRecord";
    case Errc::kRaggedRows: return "RaggedRows";
    case Errc::kNonNumericCell: return "NonNumericCell";
    case Errc::kMissingChannel: return "MissingChannel";
    case Errc::kWindowOutOfRange: return "WindowOutOfRange";
    case Errc::kMalformedManifest: return "MalformedManifest";
    case Errc::kMalformedCache: return "MalformedCache";
    case Errc::kIrrationalRatio: return "IrrationalRatio";
    case Errc::kFrequencyOutOfRange: return "FrequencyOutOfRange";
    case Errc::kUnstableDesign: return "UnstableDesign";
    case Errc::kInvalidBand: return "InvalidBand";
    case Errc::kSignalTooShort: return "SignalTooShort";
    case Errc::kRecordingTooShort: return "RecordingTooShort";
    case Errc::kEpochTooShort: return "EpochTooShort";
    case Errc::kDegenerateVariance: return "DegenerateVariance";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kZeroGraph: return "ZeroGraph";
    case Errc::kNoConvergence: return "NoConvergence";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kTooFewRows: return "TooFewRows";
    case Errc::kSingleClassInput: return "SingleClassInput";
    case Errc::kTooFewClasses: return "TooFewClasses";
    case Errc::kMalformedModel: return "MalformedModel";
    case Errc::kInsufficientEpochs: return "InsufficientEpochs";
    case Errc::kMissingCondition: return "MissingCondition";
    case Errc::kUnknownLabel: return "UnknownLabel";
  }
  return "Unknown";
}

ErrorKind error_kind(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument:
    case Errc::kInvalidBand:
    case Errc::kFrequencyOutOfRange:
    case Errc::kIrrationalRatio:
      return ErrorKind::kUsage;
    case Errc::kUnstableDesign:
    case Errc::kDegenerateVariance:
    case Errc::kZeroGraph:
    case Errc::kNoConvergence:
      return ErrorKind::kNumeric;
    default:
      return ErrorKind::kData;
  }
}

}  // namespace eegid
