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

// Command-line front end. Links only the C API of the shared library.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "eegid/eegid.h"

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

int exit_code(eegid_status st) {
  switch (st) {
    case EEGID_OK: return kExitOk;
    case EEGID_ERR_USAGE: return kExitUsage;
    case EEGID_ERR_NUMERIC: return kExitNumeric;
    default: return kExitData;
  }
}

int fail(eegid_status st) {
  std::cerr << "eegid: " << eegid_last_error() << "\n";
  return exit_code(st);
}

struct CommonOptions {
  std::string manifest;
  std::string out;
  int workers = 1;
  double notch_hz = 50.0;
  double notch_q = 30.0;
  int filter_order = 4;
};

int run_ingest(const CommonOptions& o, double epoch_length_s) {
  const std::string cache = (std::filesystem::path(o.out) / "cache" / "corpus.bin").string();
  eegid_corpus* corpus = nullptr;
  int hit = 0;
  const eegid_status st = eegid_corpus_ingest(o.manifest.c_str(), cache.c_str(), o.workers, &corpus, &hit);
  if (st != EEGID_OK) return fail(st);

  std::set<std::string> subjects;
  std::set<double> rates;
  std::set<std::size_t> channel_counts;
  std::size_t epochs = 0;
  for (std::size_t i = 0; i < eegid_corpus_size(corpus); ++i) {
    eegid_recording_info info;
    eegid_corpus_recording_info(corpus, i, &info);
    subjects.insert(std::string(info.dataset_id) + "/" + info.subject_id);
    rates.insert(info.sampling_rate_hz);
    channel_counts.insert(info.num_channels);
    const double per_epoch = epoch_length_s * info.sampling_rate_hz;
    if (per_epoch >= 1.0) epochs += static_cast<std::size_t>(std::floor(info.num_samples / per_epoch));
  }
  std::cout << "recordings " << eegid_corpus_size(corpus) << "\n";
  std::cout << "subjects " << subjects.size() << "\n";
  std::cout << "rates_hz";
  for (double r : rates) std::cout << ' ' << r;
  std::cout << "\nchannels";
  for (auto c : channel_counts) std::cout << ' ' << c;
  std::cout << "\nepochs_" << epoch_length_s << "s " << epochs << "\n";
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(eegid_corpus_hash(corpus)));
  std::cout << "content_hash " << hash << "\n";
  std::cout << "cache " << (hit ? "hit " : "written ") << cache << "\n";
  eegid_corpus_free(corpus);
  return kExitOk;
}

int run_features(const CommonOptions& o, const std::string& metric, const std::string& graph_metric,
                 const std::string& band, const std::string& channels, const std::string& condition,
                 double epoch_length_s, const std::string& cache) {
  eegid_corpus* corpus = nullptr;
  eegid_status st = eegid_corpus_ingest(o.manifest.c_str(), cache.empty() ? nullptr : cache.c_str(),
                                        o.workers, &corpus, nullptr);
  if (st != EEGID_OK) return fail(st);

  eegid_feature_options opt;
  eegid_feature_options_init(&opt);
  opt.metric = metric.c_str();
  opt.graph_metric = graph_metric.c_str();
  opt.band = band.c_str();
  opt.channels = channels.c_str();
  opt.condition = condition.c_str();
  opt.epoch_length_s = epoch_length_s;
  opt.notch_hz = o.notch_hz;
  opt.notch_q = o.notch_q;
  opt.filter_order = o.filter_order;
  opt.workers = o.workers;
  eegid_features* features = nullptr;
  st = eegid_features_compute(corpus, &opt, &features);
  eegid_corpus_free(corpus);
  if (st != EEGID_OK) return fail(st);

  const auto parent = std::filesystem::path(o.out).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  st = eegid_features_write_csv(features, o.out.c_str());
  if (st == EEGID_OK) {
    std::cerr << "wrote " << eegid_features_rows(features) << " rows x "
              << eegid_features_cols(features) << " features to " << o.out << "\n";
  }
  eegid_features_free(features);
  return st == EEGID_OK ? kExitOk : fail(st);
}

int run_evaluate(const CommonOptions& o, const std::string& config, bool has_manifest, bool has_out,
                 bool has_seed, std::uint64_t seed, bool has_workers, bool has_notch_hz,
                 bool has_notch_q, bool has_order, bool quiet) {
  eegid_run_overrides ovr;
  eegid_run_overrides_init(&ovr);
  if (has_manifest) ovr.manifest_path = o.manifest.c_str();
  if (has_out) ovr.output_dir = o.out.c_str();
  ovr.has_seed = has_seed ? 1 : 0;
  ovr.seed = seed;
  if (has_workers) ovr.workers = o.workers;
  if (has_notch_hz) ovr.notch_hz = o.notch_hz;
  if (has_notch_q) ovr.notch_q = o.notch_q;
  if (has_order) ovr.filter_order = o.filter_order;
  ovr.quiet = quiet ? 1 : 0;
  std::size_t done = 0, failed = 0;
  const eegid_status st = eegid_evaluate(config.c_str(), &ovr, &done, &failed);
  std::cerr << done << " experiment(s) completed, " << failed << " failed\n";
  return st == EEGID_OK ? kExitOk : fail(st);
}

int run_report(const std::string& out) {
  std::size_t n = 0;
  const eegid_status st = eegid_report(out.c_str(), &n);
  if (st != EEGID_OK) return fail(st);
  std::ifstream table(std::filesystem::path(out) / "band_table.csv");
  std::cout << table.rdbuf();
  std::cerr << n << " report(s) rolled up under " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEG biometric identification from functional connectivity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(eegid_version()));

  CommonOptions o;
  double epoch_length_s = 4.0;
  std::string metric = "PLV", graph_metric = "none", band = "gamma", channels = "common_56";
  std::string condition = "resting", config, cache;
  std::uint64_t seed = 0;
  bool quiet = false;

  auto* ingest = app.add_subcommand("ingest", "Parse, window, channel-select and resample a manifest");
  ingest->add_option("--manifest", o.manifest, "Dataset manifest (JSON)")->required();
  ingest->add_option("--out", o.out, "Output directory; the cache goes to <out>/cache")->default_val("out");
  ingest->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  ingest->add_option("--epoch-length", epoch_length_s, "Epoch length for the summary, seconds")
      ->check(CLI::PositiveNumber);

  auto* features = app.add_subcommand("features", "Write a labeled feature matrix as CSV");
  features->add_option("--manifest", o.manifest, "Dataset manifest (JSON)")->required();
  features->add_option("--out", o.out, "Output CSV file")->required();
  features->add_option("--metric", metric, "COR, PLV or PLI")->default_val("PLV");
  features->add_option("--graph-metric", graph_metric, "none, ND, EC, BC or CC")->default_val("none");
  features->add_option("--band", band, "delta, theta, alpha, beta1, beta2, gamma or broadband")
      ->default_val("gamma");
  features->add_option("--channels", channels, "common_56 or ten_twenty_21")->default_val("common_56");
  features->add_option("--condition", condition, "resting or task")->default_val("resting");
  features->add_option("--epoch-length", epoch_length_s, "Epoch length, seconds")->check(CLI::PositiveNumber);
  features->add_option("--cache", cache, "Corpus cache file");
  features->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  features->add_option("--notch-hz", o.notch_hz, "Notch frequency, 0 disables");
  features->add_option("--notch-q", o.notch_q, "Notch quality factor")->check(CLI::PositiveNumber);
  features->add_option("--filter-order", o.filter_order, "Butterworth band-pass order (even, 2-8)");

  auto* evaluate = app.add_subcommand("evaluate", "Run the experiment grid of a run configuration");
  evaluate->add_option("--config", config, "Run configuration (JSON)")->required();
  auto* e_manifest = evaluate->add_option("--manifest", o.manifest, "Override the manifest");
  auto* e_out = evaluate->add_option("--out", o.out, "Override the output directory");
  auto* e_seed = evaluate->add_option("--seed", seed, "Override the experiment seed");
  auto* e_workers = evaluate->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  auto* e_notch = evaluate->add_option("--notch-hz", o.notch_hz, "Notch frequency, 0 disables");
  auto* e_q = evaluate->add_option("--notch-q", o.notch_q, "Notch quality factor")->check(CLI::PositiveNumber);
  auto* e_order = evaluate->add_option("--filter-order", o.filter_order, "Butterworth band-pass order");
  evaluate->add_flag("--quiet", quiet, "No progress output");

  auto* report = app.add_subcommand("report", "Rebuild roll-up tables from existing reports");
  report->add_option("--out", o.out, "Output directory of a previous evaluate run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (ingest->parsed()) return run_ingest(o, epoch_length_s);
  if (features->parsed()) {
    return run_features(o, metric, graph_metric, band, channels, condition, epoch_length_s, cache);
  }
  if (evaluate->parsed()) {
    return run_evaluate(o, config, e_manifest->count() > 0, e_out->count() > 0, e_seed->count() > 0,
                        seed, e_workers->count() > 0, e_notch->count() > 0, e_q->count() > 0,
                        e_order->count() > 0, quiet);
  }
  return run_report(o.out);
}
