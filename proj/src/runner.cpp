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

#include "eegid/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eegid/report.hpp"

namespace eegid {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(Errc::kInvalidArgument, "run config: " + what);
}

std::vector<std::string> strings_at(const json& root, const char* key) {
  const json& v = root[key];
  if (!v.is_array()) bad_config(std::string("'") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) bad_config(std::string("'") + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<double> numbers_at(const json& v, const std::string& key) {
  if (!v.is_array()) bad_config("'" + key + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad_config("'" + key + "' must be a list of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty()) return path;
  const fs::path p(path);
  return (p.is_absolute() || base_dir.empty() ? p : fs::path(base_dir) / p).lexically_normal().string();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string RunConfig::effective_cache_dir() const {
  return cache_dir.empty() ? (fs::path(output_dir) / "cache").string() : cache_dir;
}

std::vector<eval::ExperimentConfig> RunConfig::experiments() const {
  if (bands.empty() || metrics.empty() || graph_metrics.empty() || epoch_lengths_s.empty() ||
      channel_policies.empty() || conditions.empty()) {
    throw Error(Errc::kInvalidArgument, "experiment grid is empty");
  }
  if (grid.size() == 0) throw Error(Errc::kInvalidArgument, "hyperparameter grid is empty");
  if (k1 < 2 || k2 < 2) throw Error(Errc::kInvalidArgument, "k1 and k2 must be at least 2");
  std::vector<eval::ExperimentConfig> out;
  for (const auto& cond : conditions) {
    for (const auto& policy : channel_policies) {
      for (double len : epoch_lengths_s) {
        if (!(len > 0.0)) throw Error(Errc::kInvalidArgument, "epoch lengths must be positive");
        for (auto metric : metrics) {
          for (const auto& gm : graph_metrics) {
            for (auto band : bands) {
              eval::ExperimentConfig c;
              c.feature = FeatureSpec{metric, gm, band, len};
              c.channels = policy;
              c.train_condition = cond.train;
              c.test_condition = cond.test;
              c.seed = seed;
              c.k1 = k1;
              c.k2 = k2;
              c.grid = grid;
              c.svm.class_weighting = class_weighting;
              c.preprocess = preprocess;
              out.push_back(std::move(c));
            }
          }
        }
      }
    }
  }
  return out;
}

RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    bad_config(e.what());
  }
  if (!root.is_object()) bad_config("top level must be an object");
  RunConfig c;
  try {
    if (root.contains("manifest")) c.manifest_path = resolve(root["manifest"].get<std::string>(), base_dir);
    if (root.contains("output_dir")) c.output_dir = resolve(root["output_dir"].get<std::string>(), base_dir);
    if (root.contains("cache_dir")) c.cache_dir = resolve(root["cache_dir"].get<std::string>(), base_dir);
    if (root.contains("seed")) c.seed = root["seed"].get<std::uint64_t>();
    if (root.contains("workers")) c.workers = root["workers"].get<int>();
    if (root.contains("k1")) c.k1 = root["k1"].get<int>();
    if (root.contains("k2")) c.k2 = root["k2"].get<int>();
    if (root.contains("class_weighting")) c.class_weighting = root["class_weighting"].get<bool>();
  } catch (const json::exception& e) {
    bad_config(e.what());
  }

  if (root.contains("bands")) {
    c.bands.clear();
    for (const auto& s : strings_at(root, "bands")) {
      auto b = dsp::parse_band(s);
      if (!b) bad_config("unknown band '" + s + "' (delta, theta, alpha, beta1, beta2, gamma, broadband)");
      c.bands.push_back(*b);
    }
  }
  if (root.contains("metrics")) {
    c.metrics.clear();
    for (const auto& s : strings_at(root, "metrics")) {
      auto m = fc::parse_metric(s);
      if (!m) bad_config("unknown metric '" + s + "' (COR, PLV, PLI)");
      c.metrics.push_back(*m);
    }
  }
  if (root.contains("graph_metrics")) {
    c.graph_metrics.clear();
    for (const auto& s : strings_at(root, "graph_metrics")) {
      if (s == "none") {
        c.graph_metrics.emplace_back(std::nullopt);
        continue;
      }
      auto g = graph::parse_node_metric(s);
      if (!g) bad_config("unknown graph metric '" + s + "' (none, ND, EC, BC, CC)");
      c.graph_metrics.emplace_back(*g);
    }
  }
  if (root.contains("epoch_lengths_s")) c.epoch_lengths_s = numbers_at(root["epoch_lengths_s"], "epoch_lengths_s");
  if (root.contains("channel_policies")) {
    c.channel_policies.clear();
    for (const auto& s : strings_at(root, "channel_policies")) {
      auto p = parse_channel_policy(s);
      if (!p) bad_config("unknown channel policy '" + s + "' (common_56, ten_twenty_21)");
      c.channel_policies.push_back(*p);
    }
  }
  if (root.contains("conditions")) {
    c.conditions.clear();
    if (!root["conditions"].is_array()) bad_config("'conditions' must be a list of pairs");
    for (const auto& pair : root["conditions"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        bad_config("each condition must be [train, test]");
      }
      auto a = parse_condition(pair[0].get<std::string>());
      auto b = parse_condition(pair[1].get<std::string>());
      if (!a || !b) bad_config("conditions are 'resting' or 'task'");
      c.conditions.push_back({*a, *b});
    }
  }
  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) bad_config("'grid' must be an object");
    if (g.contains("C")) c.grid.c_values = numbers_at(g["C"], "grid.C");
    if (g.contains("gamma")) c.grid.gamma_values = numbers_at(g["gamma"], "grid.gamma");
  }
  if (root.contains("preprocess")) {
    const json& p = root["preprocess"];
    try {
      if (p.contains("notch_hz")) c.preprocess.notch_hz = p["notch_hz"].get<double>();
      if (p.contains("notch_q")) c.preprocess.notch_q = p["notch_q"].get<double>();
      if (p.contains("filter_order")) c.preprocess.filter_order = p["filter_order"].get<int>();
    } catch (const json::exception& e) {
      bad_config(e.what());
    }
  }
  if (c.workers < 1) bad_config("workers must be at least 1");
  (void)c.experiments();
  return c;
}

RunConfig load_run_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kInvalidArgument, "cannot open run config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), fs::path(path).parent_path().string());
}

std::string feature_cache_key(std::uint64_t corpus_hash, const FeatureSpec& spec,
                              const ChannelPolicy& channels, Condition condition,
                              const PreprocessOptions& preprocess) {
  std::ostringstream s;
  s.precision(17);
  s << "features-v1|" << corpus_hash << '|' << spec.feature_name() << '|'
    << dsp::band_name(spec.band) << '|' << spec.epoch_length_s << '|' << channels.name();
  for (const auto& n : channels.names) s << ',' << n;
  s << '|' << condition_name(condition) << '|' << preprocess.notch_hz << '|' << preprocess.notch_q
    << '|' << preprocess.filter_order;
  const std::string text = s.str();
  return "features_" + hex64(fnv1a(text.data(), text.size())) + ".csv";
}

FeatureTable cached_features(const Corpus& corpus, const FeatureSpec& spec,
                             const ChannelPolicy& channels, Condition condition,
                             const PreprocessOptions& preprocess, const std::string& cache_dir,
                             int workers, bool* cache_hit) {
  if (cache_hit) *cache_hit = false;
  fs::path file;
  if (!cache_dir.empty()) {
    file = fs::path(cache_dir) /
           feature_cache_key(corpus.content_hash, spec, channels, condition, preprocess);
    if (fs::exists(file)) {
      std::ifstream in(file);
      try {
        FeatureTable t = read_feature_csv(in, condition);
        if (cache_hit) *cache_hit = true;
        return t;
      } catch (const Error&) {
        // Unreadable cache entries are recomputed.
      }
    }
  }
  const auto selected = eval::apply_channel_policy(corpus.recordings, channels);
  FeatureTable t = compute_features(selected, spec, preprocess, condition, workers);
  if (!file.empty()) {
    fs::create_directories(file.parent_path());
    const fs::path tmp = file.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw Error(Errc::kIo, "cannot write " + tmp.string());
      write_feature_csv(out, t);
    }
    fs::rename(tmp, file);
  }
  return t;
}

RunResult run_evaluation(const RunConfig& config, const Corpus& corpus, std::ostream* progress) {
  const auto experiments = config.experiments();
  const std::string cache_dir = config.effective_cache_dir();
  RunResult result;
  std::vector<report::ReportSummary> summaries;
  std::size_t index = 0;
  for (const auto& exp : experiments) {
    ++index;
    if (progress) {
      *progress << "[" << index << "/" << experiments.size() << "] " << exp.name() << std::endl;
    }
    try {
      bool hit = false;
      const FeatureTable train = cached_features(corpus, exp.feature, exp.channels, exp.train_condition,
                                                 exp.preprocess, cache_dir, config.workers, &hit);
      (hit ? result.feature_cache_hits : result.feature_cache_misses)++;
      FeatureTable test;
      if (exp.mismatched()) {
        test = cached_features(corpus, exp.feature, exp.channels, exp.test_condition, exp.preprocess,
                               cache_dir, config.workers, &hit);
        (hit ? result.feature_cache_hits : result.feature_cache_misses)++;
      }
      auto rep = eval::evaluate_features(train, exp.mismatched() ? test : train, exp, config.workers);
      report::write_report_files(config.output_dir, rep);
      summaries.push_back(report::summarize(rep));
      if (progress) {
        char line[96];
        std::snprintf(line, sizeof line, "    accuracy %.4f  se %.4f\n", rep.cv.mean_accuracy,
                      rep.cv.standard_error);
        *progress << line << std::flush;
      }
      result.reports.push_back(std::move(rep));
    } catch (const Error& e) {
      if (progress) *progress << "    failed: " << e.what() << std::endl;
      result.failures.push_back({exp.name(), e.code(), e.detail()});
    }
  }
  report::write_rollups(config.output_dir, summaries);
  return result;
}

}  // namespace eegid
