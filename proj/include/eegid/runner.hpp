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
#include <optional>
#include <string>
#include <vector>

#include "eegid/corpus.hpp"
#include "eegid/error.hpp"
#include "eegid/eval.hpp"

namespace eegid {

struct ConditionPair {
  Condition train = Condition::kResting;
  Condition test = Condition::kResting;
};

// Experiment grid for the evaluate command; see docs/run_config.md.
struct RunConfig {
  std::string manifest_path;
  std::string output_dir = "out";
  std::string cache_dir;  // empty: <output_dir>/cache
  std::uint64_t seed = 1;
  int workers = 1;

  std::vector<dsp::Band> bands{dsp::Band::kGamma};
  std::vector<fc::Metric> metrics{fc::Metric::kPlv};
  std::vector<std::optional<graph::NodeMetric>> graph_metrics{std::nullopt};
  std::vector<double> epoch_lengths_s{4.0};
  std::vector<ChannelPolicy> channel_policies{ChannelPolicy{}};
  std::vector<ConditionPair> conditions{ConditionPair{}};

  int k1 = 10;
  int k2 = 3;
  eval::HyperGrid grid;
  bool class_weighting = false;
  PreprocessOptions preprocess;

  std::string effective_cache_dir() const;
  // Cartesian product in a fixed order. Errors: kInvalidArgument when any
  // axis is empty or a value is invalid.
  std::vector<eval::ExperimentConfig> experiments() const;
};

// Errors: kInvalidArgument. Relative paths resolve against base_dir.
RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir);
RunConfig load_run_config_file(const std::string& path);

// Cache file name for one feature table.
std::string feature_cache_key(std::uint64_t corpus_hash, const FeatureSpec& spec,
                              const ChannelPolicy& channels, Condition condition,
                              const PreprocessOptions& preprocess);

// Features for one experiment side, read from `cache_dir` when present and
// written there otherwise. An empty cache_dir disables caching.
FeatureTable cached_features(const Corpus& corpus, const FeatureSpec& spec,
                             const ChannelPolicy& channels, Condition condition,
                             const PreprocessOptions& preprocess, const std::string& cache_dir,
                             int workers, bool* cache_hit = nullptr);

struct ExperimentFailure {
  std::string name;
  Errc code = Errc::kInvalidArgument;
  std::string message;
};

struct RunResult {
  std::vector<eval::ExperimentReport> reports;
  std::vector<ExperimentFailure> failures;
  std::size_t feature_cache_hits = 0;
  std::size_t feature_cache_misses = 0;
};

// Runs every experiment of the grid on `corpus`, writing per-experiment
// report files and the roll-up tables into config.output_dir. A failing
// experiment is recorded and the rest still run. Progress lines go to
// `progress` when non-null.
RunResult run_evaluation(const RunConfig& config, const Corpus& corpus, std::ostream* progress);

}  // namespace eegid
