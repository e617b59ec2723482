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

#include "eegid/features.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "eegid/error.hpp"
#include "eegid/parallel.hpp"

namespace eegid {

namespace {

void put_double(std::ostream& out, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, end - buf);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  return out;
}

}  // namespace

std::string FeatureSpec::feature_name() const {
  std::string name = fc::metric_name(metric);
  if (node_metric) name = std::string(graph::node_metric_name(*node_metric)) + "-" + name;
  return name;
}

EegRecording preprocess(const EegRecording& rec, const PreprocessOptions& options) {
  EegRecording out = rec;
  if (options.notch_hz > 0.0) out = dsp::notch(out, options.notch_hz, options.notch_q);
  const auto filter = dsp::design_butterworth_bandpass(dsp::band_spec(dsp::Band::kBroadband),
                                                       rec.sampling_rate_hz, options.filter_order);
  return dsp::filter_recording(out, filter);
}

std::vector<dsp::Epoch> band_epochs(const EegRecording& preprocessed, dsp::Band band,
                                    double epoch_length_s, int filter_order) {
  const dsp::BandSpec spec = dsp::band_spec(band);
  if (band == dsp::Band::kBroadband) return dsp::split_epochs(preprocessed, epoch_length_s, spec);
  const auto filter = dsp::design_butterworth_bandpass(spec, preprocessed.sampling_rate_hz,
                                                       filter_order);
  return dsp::split_epochs(dsp::filter_recording(preprocessed, filter), epoch_length_s, spec);
}

fc::FeatureVector epoch_features(const dsp::Epoch& epoch, const FeatureSpec& spec) {
  const fc::ConnectivityMatrix c = fc::connectivity_matrix(epoch, spec.metric);
  if (!spec.node_metric) return fc::vectorize_upper(c);
  const auto g = graph::WeightedGraph::from_connectivity(c);
  fc::FeatureVector fv;
  fv.kind = fc::FeatureKind::kGraphMetric;
  fv.values = graph::node_scores(g, *spec.node_metric).scores;
  return fv;
}

std::vector<std::string> feature_columns(const std::vector<std::string>& channels,
                                         const FeatureSpec& spec) {
  if (spec.node_metric) return channels;
  std::vector<std::string> out;
  for (auto [a, b] : fc::upper_pairs(channels.size())) out.push_back(channels[a] + "-" + channels[b]);
  return out;
}

std::vector<std::string> FeatureTable::class_labels() const {
  std::vector<std::string> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = dataset_ids[r] + "/" + subject_ids[r];
  return out;
}

FeatureTable compute_features(const std::vector<EegRecording>& corpus, const FeatureSpec& spec,
                              const PreprocessOptions& preprocess_options, Condition condition,
                              int workers) {
  std::vector<const EegRecording*> selected;
  for (const auto& r : corpus) {
    if (r.condition == condition) selected.push_back(&r);
  }
  if (selected.empty()) {
    throw Error(Errc::kMissingCondition,
                std::string("corpus has no ") + condition_name(condition) + " recordings");
  }
  const auto& channels = selected.front()->channel_names;
  for (const auto* r : selected) {
    if (r->channel_names != channels) {
      throw Error(Errc::kDimensionMismatch, r->class_label() + " has a different channel set");
    }
  }

  std::vector<std::vector<dsp::Epoch>> epochs(selected.size());
  std::vector<std::vector<fc::FeatureVector>> rows(selected.size());
  parallel_for(selected.size(), workers, [&](std::size_t i) {
    try {
      const EegRecording clean = preprocess(*selected[i], preprocess_options);
      epochs[i] = band_epochs(clean, spec.band, spec.epoch_length_s, preprocess_options.filter_order);
      for (const auto& e : epochs[i]) rows[i].push_back(epoch_features(e, spec));
      for (auto& e : epochs[i]) e.data = Matrix();
    } catch (const Error& e) {
      throw Error(e.code(), selected[i]->class_label() + ": " + e.detail());
    }
  });

  FeatureTable t;
  t.condition = condition;
  t.columns = feature_columns(channels, spec);
  std::size_t n = 0;
  for (const auto& r : rows) n += r.size();
  t.values = Matrix(n, t.columns.size());
  std::size_t at = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k, ++at) {
      std::copy(rows[i][k].values.begin(), rows[i][k].values.end(), t.values.row(at).begin());
      t.subject_ids.push_back(epochs[i][k].subject_id);
      t.dataset_ids.push_back(epochs[i][k].dataset_id);
      t.epoch_indices.push_back(epochs[i][k].epoch_index);
    }
  }
  return t;
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  out << "subject,dataset,epoch";
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    out << table.subject_ids[r] << ',' << table.dataset_ids[r] << ',' << table.epoch_indices[r];
    for (double v : table.values.row(r)) {
      out << ',';
      put_double(out, v);
    }
    out << '\n';
  }
}

FeatureTable read_feature_csv(std::istream& in, Condition condition) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::kMalformedCache, "empty feature table");
  auto header = split_csv(line);
  if (header.size() < 3 || header[0] != "subject" || header[1] != "dataset" || header[2] != "epoch") {
    throw Error(Errc::kMalformedCache, "feature table header must start with subject,dataset,epoch");
  }
  FeatureTable t;
  t.condition = condition;
  t.columns.assign(header.begin() + 3, header.end());
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw Error(Errc::kMalformedCache, "line " + std::to_string(line_no) + " has " +
                                             std::to_string(cells.size()) + " cells");
    }
    t.subject_ids.push_back(cells[0]);
    t.dataset_ids.push_back(cells[1]);
    std::size_t idx = 0;
    auto [p, ec] = std::from_chars(cells[2].data(), cells[2].data() + cells[2].size(), idx);
    if (ec != std::errc() || p != cells[2].data() + cells[2].size()) {
      throw Error(Errc::kMalformedCache, "line " + std::to_string(line_no) + ": bad epoch index");
    }
    t.epoch_indices.push_back(idx);
    for (std::size_t c = 3; c < cells.size(); ++c) {
      double v = 0.0;
      auto [q, ec2] = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
      if (ec2 != std::errc() || q != cells[c].data() + cells[c].size()) {
        throw Error(Errc::kMalformedCache, "line " + std::to_string(line_no) + ": bad value '" +
                                               cells[c] + "'");
      }
      values.push_back(v);
    }
  }
  t.values = Matrix(t.subject_ids.size(), t.columns.size());
  std::copy(values.begin(), values.end(), t.values.values().begin());
  return t;
}

}  // namespace eegid
