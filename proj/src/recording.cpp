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

#include "eegid/recording.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_map>

#include "eegid/error.hpp"

namespace eegid {

const char* condition_name(Condition c) {
  return c == Condition::kResting ? "resting" : "task";
}

std::optional<Condition> parse_condition(std::string_view text) {
  if (text == "resting" || text == "rest") return Condition::kResting;
  if (text == "task") return Condition::kTask;
  return std::nullopt;
}

void validate(const EegRecording& rec) {
  if (!(rec.sampling_rate_hz > 0.0) || !std::isfinite(rec.sampling_rate_hz)) {
    throw Error(Errc::kInvalidArgument, "sampling rate must be positive");
  }
  if (rec.data.rows() == 0 || rec.data.cols() == 0) {
    throw Error(Errc::kInvalidArgument, "recording has no samples");
  }
  if (rec.channel_names.size() != rec.data.rows()) {
    throw Error(Errc::kInvalidArgument,
                "channel name count does not match data rows");
  }
  std::set<std::string> seen;
  for (const auto& name : rec.channel_names) {
    if (!seen.insert(name).second) {
      throw Error(Errc::kInvalidArgument, "duplicate channel name '" + name + "'");
    }
  }
}

std::string normalize_label(std::string_view label) {
  std::size_t end = label.size();
  while (end > 0 && (label[end - 1] == '.' || std::isspace(static_cast<unsigned char>(label[end - 1])))) {
    --end;
  }
  std::size_t begin = 0;
  while (begin < end && std::isspace(static_cast<unsigned char>(label[begin]))) ++begin;
  std::string out(label.substr(begin, end - begin));
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (out.size() >= 2 && out[0] == 'F' && out[1] == 'P') out[1] = 'p';
  if (out.size() >= 2 && out.back() == 'Z') out.back() = 'z';
  return out;
}

ChannelSet::ChannelSet(const std::vector<std::string>& names) {
  names_.reserve(names.size());
  for (const auto& n : names) names_.push_back(normalize_label(n));
  std::sort(names_.begin(), names_.end());
  auto dup = std::adjacent_find(names_.begin(), names_.end());
  if (dup != names_.end()) {
    throw Error(Errc::kInvalidArgument, "duplicate channel '" + *dup + "' in channel set");
  }
}

bool ChannelSet::contains(std::string_view normalized) const {
  return std::binary_search(names_.begin(), names_.end(), normalized);
}

ChannelSet ChannelSet::common_56() {
  static const std::vector<std::string> kNames = {
      "FC5", "FC3", "FC1", "FC2", "FC4", "FC6",
      "C5",  "C3",  "C1",  "Cz",  "C2",  "C4",  "C6",
      "CP5", "CP3", "CP1", "CP2", "CP4", "CP6",
      "Fp1", "Fpz", "Fp2",
      "AF7", "AF3", "AF4", "AF8",
      "F7",  "F5",  "F3",  "F1",  "Fz",  "F2",  "F4",  "F6",  "F8",
      "T7",  "T8",  "TP7", "TP8",
      "P7",  "P5",  "P3",  "P1",  "Pz",  "P2",  "P4",  "P6",  "P8",
      "PO7", "PO3", "POz", "PO4", "PO8",
      "O1",  "Oz",  "O2"};
  return ChannelSet(kNames);
}

ChannelSet ChannelSet::ten_twenty_21() {
  static const std::vector<std::string> kNames = {
      "Fp1", "Fpz", "Fp2", "F7", "F3", "Fz", "F4", "F8", "T7", "C3", "Cz",
      "C4",  "T8",  "P7",  "P3", "Pz", "P4", "P8", "O1", "Oz", "O2"};
  return ChannelSet(kNames);
}

EegRecording select_channels(const EegRecording& rec, const ChannelSet& set) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rec.channel_names.size(); ++i) {
    index.emplace(normalize_label(rec.channel_names[i]), i);
  }
  EegRecording out;
  out.sampling_rate_hz = rec.sampling_rate_hz;
  out.subject_id = rec.subject_id;
  out.dataset_id = rec.dataset_id;
  out.condition = rec.condition;
  out.channel_names = set.names();
  out.data = Matrix(set.size(), rec.num_samples());
  for (std::size_t r = 0; r < set.size(); ++r) {
    auto it = index.find(set.names()[r]);
    if (it == index.end()) {
      throw Error(Errc::kMissingChannel, set.names()[r]);
    }
    auto src = rec.data.row(it->second);
    std::copy(src.begin(), src.end(), out.data.row(r).begin());
  }
  return out;
}

}  // namespace eegid
