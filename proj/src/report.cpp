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

#include "eegid/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "eegid/error.hpp"

namespace eegid::report {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * v);
  return buf;
}

ordered_json audit_json(const std::vector<eval::GridAuditEntry>& audit) {
  ordered_json a = ordered_json::array();
  for (const auto& e : audit) {
    a.push_back({{"C", e.params.c},
                 {"gamma", e.params.gamma},
                 {"mean_accuracy", e.mean_accuracy},
                 {"fold_accuracy", e.fold_accuracy}});
  }
  return a;
}

int band_rank(const std::string& band) {
  auto b = dsp::parse_band(band);
  return b ? static_cast<int>(*b) : 100;
}

std::ofstream open_out(const fs::path& p, bool binary = false) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error(Errc::kIo, "cannot write " + p.string());
  return out;
}

}  // namespace

std::string report_json(const eval::ExperimentReport& r) {
  const auto& c = r.config;
  const auto band = dsp::band_spec(c.feature.band);
  ordered_json j;
  j["name"] = c.name();
  j["config"] = {
      {"feature", c.feature.feature_name()},
      {"metric", fc::metric_name(c.feature.metric)},
      {"graph_metric", c.feature.node_metric ? graph::node_metric_name(*c.feature.node_metric) : ""},
      {"band", dsp::band_name(c.feature.band)},
      {"band_hz", {band.low_hz, band.high_hz}},
      {"channels", c.channels.name()},
      {"channel_names", c.channels.channel_set().names()},
      {"epoch_length_s", c.feature.epoch_length_s},
      {"train_condition", condition_name(c.train_condition)},
      {"test_condition", condition_name(c.test_condition)},
      {"seed", c.seed},
      {"k1", c.k1},
      {"k2", c.k2},
      {"grid", {{"C", c.grid.c_values}, {"gamma", c.grid.gamma_values}}},
      {"class_weighting", c.svm.class_weighting},
      {"preprocess",
       {{"notch_hz", c.preprocess.notch_hz},
        {"notch_q", c.preprocess.notch_q},
        {"filter_order", c.preprocess.filter_order}}},
  };
  j["n_subjects"] = r.n_subjects;
  j["epochs_per_subject"] = r.epochs_per_subject;
  j["n_train_epochs"] = r.n_train_epochs;
  j["n_test_epochs"] = r.n_test_epochs;
  j["feature_dimension"] = r.feature_dimension;
  j["accuracy"] = r.cv.mean_accuracy;
  j["mean_fold_accuracy"] = r.cv.mean_fold_accuracy;
  j["standard_error"] = r.cv.standard_error;
  j["fold_accuracy"] = r.cv.fold_accuracy;
  ordered_json folds = ordered_json::array();
  for (const auto& f : r.cv.folds) {
    folds.push_back({{"fold", f.fold},
                     {"accuracy", f.accuracy},
                     {"C", f.chosen.c},
                     {"gamma", f.chosen.gamma},
                     {"n_train", f.train_rows.size()},
                     {"n_test", f.test_rows.size()},
                     {"iteration_cap_reached", f.iteration_cap_reached},
                     {"grid_audit", audit_json(f.audit)}});
  }
  j["folds"] = folds;
  j["classes"] = r.cv.confusion.classes;
  j["confusion"] = r.cv.confusion.counts;
  return j.dump(2) + "\n";
}

ReportSummary summarize(const eval::ExperimentReport& r) {
  ReportSummary s;
  s.name = r.config.name();
  s.feature = r.config.feature.feature_name();
  s.band = dsp::band_name(r.config.feature.band);
  s.channels = r.config.channels.name();
  s.epoch_length_s = r.config.feature.epoch_length_s;
  s.train_condition = condition_name(r.config.train_condition);
  s.test_condition = condition_name(r.config.test_condition);
  s.seed = r.config.seed;
  s.n_subjects = r.n_subjects;
  s.epochs_per_subject = r.epochs_per_subject;
  s.feature_dimension = r.feature_dimension;
  s.accuracy = r.cv.mean_accuracy;
  s.mean_fold_accuracy = r.cv.mean_fold_accuracy;
  s.standard_error = r.cv.standard_error;
  return s;
}

ReportSummary parse_report_summary(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    const json& c = j.at("config");
    ReportSummary s;
    s.name = j.at("name").get<std::string>();
    s.feature = c.at("feature").get<std::string>();
    s.band = c.at("band").get<std::string>();
    s.channels = c.at("channels").get<std::string>();
    s.epoch_length_s = c.at("epoch_length_s").get<double>();
    s.train_condition = c.at("train_condition").get<std::string>();
    s.test_condition = c.at("test_condition").get<std::string>();
    s.seed = c.at("seed").get<std::uint64_t>();
    s.n_subjects = j.at("n_subjects").get<std::size_t>();
    s.epochs_per_subject = j.at("epochs_per_subject").get<std::size_t>();
    s.feature_dimension = j.at("feature_dimension").get<std::size_t>();
    s.accuracy = j.at("accuracy").get<double>();
    s.mean_fold_accuracy = j.at("mean_fold_accuracy").get<double>();
    s.standard_error = j.at("standard_error").get<double>();
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::kInvalidArgument, std::string("not a report: ") + e.what());
  }
}

void write_results_csv(std::ostream& out, std::vector<ReportSummary> summaries) {
  std::sort(summaries.begin(), summaries.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  out << "name,feature,band,channels,epoch_length_s,train_condition,test_condition,seed,"
         "n_subjects,epochs_per_subject,feature_dimension,accuracy,mean_fold_accuracy,"
         "standard_error\n";
  for (const auto& s : summaries) {
    out << s.name << ',' << s.feature << ',' << s.band << ',' << s.channels << ','
        << shortest(s.epoch_length_s) << ',' << s.train_condition << ',' << s.test_condition << ','
        << s.seed << ',' << s.n_subjects << ',' << s.epochs_per_subject << ','
        << s.feature_dimension << ',' << shortest(s.accuracy) << ','
        << shortest(s.mean_fold_accuracy) << ',' << shortest(s.standard_error) << '\n';
  }
}

void write_band_table(std::ostream& out, std::vector<ReportSummary> summaries) {
  using Key = std::tuple<std::string, std::string, double, std::string, std::string>;
  std::map<Key, std::map<int, const ReportSummary*>> rows;
  std::map<int, std::string> bands;
  for (const auto& s : summaries) {
    const int rank = band_rank(s.band);
    bands.emplace(rank, s.band);
    rows[{s.feature, s.channels, s.epoch_length_s, s.train_condition, s.test_condition}][rank] = &s;
  }
  out << "feature,channels,epoch_length_s,train_condition,test_condition";
  for (const auto& [rank, name] : bands) out << ',' << name;
  out << '\n';
  for (const auto& [key, cells] : rows) {
    const auto& [feature, channels, epoch, train, test] = key;
    out << feature << ',' << channels << ',' << shortest(epoch) << ',' << train << ',' << test;
    for (const auto& [rank, name] : bands) {
      out << ',';
      auto it = cells.find(rank);
      if (it != cells.end()) {
        out << percent(it->second->accuracy) << "\xC2\xB1" << percent(it->second->standard_error);
      }
    }
    out << '\n';
  }
}

void write_epoch_sweep(std::ostream& out, std::vector<ReportSummary> summaries) {
  std::sort(summaries.begin(), summaries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.feature, a.channels, a.train_condition, a.test_condition, a.band,
                    a.epoch_length_s) < std::tie(b.feature, b.channels, b.train_condition,
                                                 b.test_condition, b.band, b.epoch_length_s);
  });
  out << "feature,band,channels,train_condition,test_condition,epoch_length_s,"
         "epochs_per_subject,accuracy_pct,standard_error_pct\n";
  for (const auto& s : summaries) {
    out << s.feature << ',' << s.band << ',' << s.channels << ',' << s.train_condition << ','
        << s.test_condition << ',' << shortest(s.epoch_length_s) << ',' << s.epochs_per_subject
        << ',' << percent(s.accuracy) << ',' << percent(s.standard_error) << '\n';
  }
}

void write_report_files(const std::string& dir, const eval::ExperimentReport& report) {
  const std::string name = report.config.name();
  {
    auto out = open_out(fs::path(dir) / "reports" / (name + ".json"));
    out << report_json(report);
  }
  {
    auto out = open_out(fs::path(dir) / "confusion" / (name + ".csv"));
    eval::write_confusion_csv(out, report.cv.confusion);
  }
  {
    auto out = open_out(fs::path(dir) / "confusion" / (name + ".pgm"), true);
    eval::write_confusion_pgm(out, report.cv.confusion);
  }
}

void write_rollups(const std::string& dir, const std::vector<ReportSummary>& summaries) {
  {
    auto out = open_out(fs::path(dir) / "results.csv");
    write_results_csv(out, summaries);
  }
  {
    auto out = open_out(fs::path(dir) / "band_table.csv");
    write_band_table(out, summaries);
  }
  {
    auto out = open_out(fs::path(dir) / "epoch_sweep.csv");
    write_epoch_sweep(out, summaries);
  }
}

std::vector<ReportSummary> load_report_summaries(const std::string& dir) {
  const fs::path reports = fs::path(dir) / "reports";
  if (!fs::is_directory(reports)) {
    throw Error(Errc::kIo, "no reports directory under " + dir);
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(reports)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ReportSummary> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      out.push_back(parse_report_summary(ss.str()));
    } catch (const Error& e) {
      throw Error(e.code(), f.string() + ": " + e.detail());
    }
  }
  return out;
}

}  // namespace eegid::report
