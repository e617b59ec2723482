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

#include "eegid/edf.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string_view>

#include "eegid/error.hpp"

namespace eegid {

namespace {

constexpr std::size_t kFixedHeaderBytes = 256;
constexpr std::size_t kSignalHeaderBytes = 256;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\0')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\0')) s.remove_suffix(1);
  return s;
}

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::string_view field(std::size_t width) {
    if (pos_ + width > bytes_.size()) {
      throw Error(Errc::kMalformedHeader, "header ends prematurely");
    }
    std::string_view out(reinterpret_cast<const char*>(bytes_.data()) + pos_, width);
    pos_ += width;
    return out;
  }

  std::string text(std::size_t width) { return std::string(trim(field(width))); }

  double number(std::size_t width, const char* what) {
    auto s = trim(field(width));
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
        !std::isfinite(value)) {
      throw Error(Errc::kMalformedHeader,
                  std::string("field '") + what + "' is not numeric: '" + std::string(s) + "'");
    }
    return value;
  }

  long integer(std::size_t width, const char* what) {
    double v = number(width, what);
    if (v != std::floor(v)) {
      throw Error(Errc::kMalformedHeader, std::string("field '") + what + "' is not an integer");
    }
    return static_cast<long>(v);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct SignalHeader {
  std::string label;
  double physical_min = 0, physical_max = 0;
  double digital_min = 0, digital_max = 0;
  long samples_per_record = 0;
  bool annotation = false;
};

}  // namespace

EegRecording parse_edf(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFixedHeaderBytes) {
    throw Error(Errc::kMalformedHeader, "input shorter than the 256-byte EDF header");
  }
  HeaderReader hdr(bytes);
  if (hdr.text(8) != "0") {
    throw Error(Errc::kMalformedHeader, "version field is not '0'");
  }
  hdr.field(80);  // patient
  hdr.field(80);  // recording
  hdr.field(8);   // start date
  hdr.field(8);   // start time
  const long header_bytes = hdr.integer(8, "header bytes");
  const std::string reserved = hdr.text(44);
  if (reserved.rfind("EDF+D", 0) == 0) {
    throw Error(Errc::kMalformedHeader, "discontinuous EDF+D files are not supported");
  }
  const long declared_records = hdr.integer(8, "number of records");
  const double record_duration = hdr.number(8, "record duration");
  const long ns = hdr.integer(4, "number of signals");
  if (ns <= 0) throw Error(Errc::kMalformedHeader, "no signals declared");
  if (header_bytes != static_cast<long>(kFixedHeaderBytes + kSignalHeaderBytes * ns)) {
    throw Error(Errc::kMalformedHeader, "header byte count disagrees with signal count");
  }
  if (!(record_duration > 0.0)) {
    throw Error(Errc::kMalformedHeader, "record duration must be positive");
  }
  if (bytes.size() < static_cast<std::size_t>(header_bytes)) {
    throw Error(Errc::kMalformedHeader, "signal headers truncated");
  }

  std::vector<SignalHeader> sig(static_cast<std::size_t>(ns));
  for (auto& s : sig) s.label = hdr.text(16);
  for (auto& s : sig) {
    s.annotation = s.label == "EDF Annotations";
    hdr.field(80);  // transducer
  }
  for (long i = 0; i < ns; ++i) hdr.field(8);  // physical dimension
  for (auto& s : sig) s.physical_min = hdr.number(8, "physical minimum");
  for (auto& s : sig) s.physical_max = hdr.number(8, "physical maximum");
  for (auto& s : sig) s.digital_min = hdr.number(8, "digital minimum");
  for (auto& s : sig) s.digital_max = hdr.number(8, "digital maximum");
  for (long i = 0; i < ns; ++i) hdr.field(80);  // prefiltering
  for (auto& s : sig) {
    s.samples_per_record = hdr.integer(8, "samples per record");
    if (s.samples_per_record <= 0) {
      throw Error(Errc::kMalformedHeader, "signal '" + s.label + "' has no samples per record");
    }
  }

  std::size_t record_samples = 0;
  long shared_rate_samples = -1;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    record_samples += static_cast<std::size_t>(sig[i].samples_per_record);
    if (sig[i].annotation) continue;
    if (sig[i].digital_max <= sig[i].digital_min) {
      throw Error(Errc::kMalformedHeader, "signal '" + sig[i].label + "' has an empty digital range");
    }
    if (shared_rate_samples < 0) {
      shared_rate_samples = sig[i].samples_per_record;
    } else if (sig[i].samples_per_record != shared_rate_samples) {
      throw Error(Errc::kMixedSamplingRates,
                  "signal '" + sig[i].label + "' differs in samples per record");
    }
    kept.push_back(i);
  }
  if (kept.empty()) throw Error(Errc::kMalformedHeader, "file holds only annotation signals");

  const std::size_t record_bytes = record_samples * 2;
  const std::size_t payload = bytes.size() - static_cast<std::size_t>(header_bytes);
  std::size_t records = 0;
  if (declared_records < 0) {
    records = payload / record_bytes;
  } else {
    records = static_cast<std::size_t>(declared_records);
    if (payload < records * record_bytes) {
      throw Error(Errc::kTruncatedRecord,
                  "expected " + std::to_string(records) + " data records, found " +
                      std::to_string(payload / record_bytes) + " complete");
    }
  }
  if (records == 0) throw Error(Errc::kTruncatedRecord, "file holds no data records");

  const std::size_t per_record = static_cast<std::size_t>(shared_rate_samples);
  EegRecording rec;
  rec.sampling_rate_hz = static_cast<double>(shared_rate_samples) / record_duration;
  rec.data = Matrix(kept.size(), records * per_record);
  for (auto i : kept) rec.channel_names.push_back(sig[i].label);

  // Offset of each signal's block within a data record, in samples.
  std::vector<std::size_t> offset(sig.size(), 0);
  for (std::size_t i = 1; i < sig.size(); ++i) {
    offset[i] = offset[i - 1] + static_cast<std::size_t>(sig[i - 1].samples_per_record);
  }
  const std::uint8_t* data = bytes.data() + header_bytes;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const auto& s = sig[kept[k]];
    const double scale = (s.physical_max - s.physical_min) / (s.digital_max - s.digital_min);
    auto out = rec.data.row(k);
    for (std::size_t r = 0; r < records; ++r) {
      const std::uint8_t* p = data + (r * record_samples + offset[kept[k]]) * 2;
      for (std::size_t j = 0; j < per_record; ++j) {
        auto raw = static_cast<std::int16_t>(static_cast<std::uint16_t>(p[2 * j]) |
                                             (static_cast<std::uint16_t>(p[2 * j + 1]) << 8));
        out[r * per_record + j] = s.physical_min + (raw - s.digital_min) * scale;
      }
    }
  }
  validate(rec);
  return rec;
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "'");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

EegRecording read_edf_file(const std::string& path) {
  auto bytes = read_binary_file(path);
  try {
    return parse_edf(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

}  // namespace eegid
