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
#include <iosfwd>
#include <string>
#include <vector>

#include "eegid/eval.hpp"

namespace eegid::report {

// Full report as an indented JSON document. Contains no timestamps, so equal
// inputs give byte-identical text.
std::string report_json(const eval::ExperimentReport& report);

// The fields the roll-up tables need, recoverable from report_json output.
struct ReportSummary {
  std::string name;
  std::string feature;  // "PLV", "ND-PLV", ...
  std::string band;
  std::string channels;
  double epoch_length_s = 0.0;
  std::string train_condition;
  std::string test_condition;
  std::uint64_t seed = 0;
  std::size_t n_subjects = 0;
  std::size_t epochs_per_subject = 0;
  std::size_t feature_dimension = 0;
  double accuracy = 0.0;
  double mean_fold_accuracy = 0.0;
  double standard_error = 0.0;
};

ReportSummary summarize(const eval::ExperimentReport& report);
// Errors: kInvalidArgument on text that is not a report.
ReportSummary parse_report_summary(const std::string& json_text);

// One row per experiment, sorted by name.
void write_results_csv(std::ostream& out, std::vector<ReportSummary> summaries);
// Band roll-up: one row per (feature, channels, epoch length, conditions),
// one column per band, cells "mean±se" in percent.
void write_band_table(std::ostream& out, std::vector<ReportSummary> summaries);
// Epoch-length sweep: one row per (feature, band, channels, conditions,
// epoch length) with the epoch count per subject.
void write_epoch_sweep(std::ostream& out, std::vector<ReportSummary> summaries);

// Writes reports/<name>.json and confusion/<name>.{csv,pgm} under `dir`.
void write_report_files(const std::string& dir, const eval::ExperimentReport& report);
// Writes results.csv, band_table.csv and epoch_sweep.csv under `dir`.
void write_rollups(const std::string& dir, const std::vector<ReportSummary>& summaries);
// Summaries of every reports/*.json under `dir`, sorted by name.
std::vector<ReportSummary> load_report_summaries(const std::string& dir);

}  // namespace eegid::report
