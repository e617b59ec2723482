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
#include <optional>
#include <string>
#include <vector>

#include "eegid/connectivity.hpp"
#include "eegid/dsp.hpp"
#include "eegid/graph.hpp"
#include "eegid/recording.hpp"

namespace eegid {

struct PreprocessOptions {
  double notch_hz = 50.0;  // <= 0 disables the notch
  double notch_q = 30.0;
  int filter_order = 4;
};

// What one feature row is made of.
struct FeatureSpec {
  fc::Metric metric = fc::Metric::kPlv;
  std::optional<graph::NodeMetric> node_metric;  // graph scores instead of FC edges
  dsp::Band band = dsp::Band::kGamma;
  double epoch_length_s = 4.0;

  // "PLV", "ND-PLV", ...
  std::string feature_name() const;
};

// Notch (unless disabled) followed by the 0.5-45 Hz broadband filter.
// Errors: kFrequencyOutOfRange when the notch lies at or above Nyquist.
EegRecording preprocess(const EegRecording& rec, const PreprocessOptions& options);

// Band-filters a preprocessed recording and cuts it into epochs.
std::vector<dsp::Epoch> band_epochs(const EegRecording& preprocessed, dsp::Band band,
                                    double epoch_length_s, int filter_order);

// Feature vector of one band-limited epoch.
fc::FeatureVector epoch_features(const dsp::Epoch& epoch, const FeatureSpec& spec);

// Column names: "A-B" channel pairs for FC edges, channel names for graph scores.
std::vector<std::string> feature_columns(const std::vector<std::string>& channels,
                                         const FeatureSpec& spec);

// Labeled feature matrix, one row per epoch.
struct FeatureTable {
  Matrix values;
  std::vector<std::string> subject_ids;
  std::vector<std::string> dataset_ids;
  std::vector<std::size_t> epoch_indices;
  std::vector<std::string> columns;
  Condition condition = Condition::kResting;

  std::size_t rows() const { return values.rows(); }
  std::vector<std::string> class_labels() const;
  friend bool operator==(const FeatureTable&, const FeatureTable&) = default;
};

// Features of every recording with the given condition, in corpus order and
// epoch order. Recordings are processed on up to `workers` threads.
FeatureTable compute_features(const std::vector<EegRecording>& corpus, const FeatureSpec& spec,
                              const PreprocessOptions& preprocess, Condition condition,
                              int workers = 1);

// CSV with a header row; label columns subject, dataset, epoch come first.
// Values use the shortest round-trip representation, so reading back is exact.
void write_feature_csv(std::ostream& out, const FeatureTable& table);
// Errors: kMalformedCache on a malformed table.
FeatureTable read_feature_csv(std::istream& in, Condition condition);

}  // namespace eegid
