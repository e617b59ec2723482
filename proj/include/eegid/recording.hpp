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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eegid/matrix.hpp"

namespace eegid {

enum class Condition { kResting, kTask };

const char* condition_name(Condition c);
std::optional<Condition> parse_condition(std::string_view text);

// A multichannel EEG signal: one row of `data` per channel.
struct EegRecording {
  std::vector<std::string> channel_names;
  double sampling_rate_hz = 0.0;
  Matrix data;
  std::string subject_id;
  std::string dataset_id;
  Condition condition = Condition::kResting;

  std::size_t num_channels() const { return data.rows(); }
  std::size_t num_samples() const { return data.cols(); }
  double duration_s() const { return num_samples() / sampling_rate_hz; }

  // Identity of the person behind the recording, unique across datasets.
  std::string class_label() const { return dataset_id + "/" + subject_id; }
};

// Throws Errc::kInvalidArgument when shape, names or rate are inconsistent.
void validate(const EegRecording& rec);

// Canonical spelling of a 10-10 electrode label: trailing dots and blanks are
// removed, letters are upper-cased except the "p" of "Fp" and a trailing "z".
// "Fc5." -> "FC5", "fpz" -> "Fpz", "Cpz.." -> "CPz".
std::string normalize_label(std::string_view label);

// Ordered, duplicate-free set of normalized channel labels. The order is the
// lexicographic sort of the labels so feature indices are stable across caps.
class ChannelSet {
 public:
  ChannelSet() = default;
  // Normalizes and sorts `names`; throws on duplicates after normalization.
  explicit ChannelSet(const std::vector<std::string>& names);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool contains(std::string_view normalized) const;

  // Channels shared by the BCI2000 64-channel cap and the 64-channel
  // Waveguard cap after dropping reference/ground and unmatched sites.
  static ChannelSet common_56();
  // The classical 10-20 montage (19 sites) plus Fpz and Oz.
  static ChannelSet ten_twenty_21();

 private:
  std::vector<std::string> names_;
};

// Rows reordered to the canonical order of `set`; channel names become the
// normalized labels. Throws Errc::kMissingChannel naming the first absent one.
EegRecording select_channels(const EegRecording& rec, const ChannelSet& set);

}  // namespace eegid
