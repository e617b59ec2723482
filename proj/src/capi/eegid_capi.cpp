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

#include "eegid/eegid.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "eegid/corpus.hpp"
#include "eegid/edf.hpp"
#include "eegid/error.hpp"
#include "eegid/features.hpp"
#include "eegid/matrix_format.hpp"
#include "eegid/report.hpp"
#include "eegid/runner.hpp"
#include "eegid/svm.hpp"

struct eegid_recording {
  eegid::EegRecording rec;
};

struct eegid_corpus {
  eegid::Corpus corpus;
};

struct eegid_features {
  eegid::FeatureTable table;
  std::vector<std::string> labels;
};

struct eegid_model {
  eegid::svm::MulticlassSvmModel model;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_error_name;

void set_error(const std::string& name, const std::string& message) {
  g_last_error_name = name;
  g_last_error = message;
}

eegid_status status_of(eegid::ErrorKind kind) {
  switch (kind) {
    case eegid::ErrorKind::kUsage: return EEGID_ERR_USAGE;
    case eegid::ErrorKind::kData: return EEGID_ERR_DATA;
    case eegid::ErrorKind::kNumeric: return EEGID_ERR_NUMERIC;
  }
  return EEGID_ERR_INTERNAL;
}

template <class F>
eegid_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    g_last_error_name.clear();
    return EEGID_OK;
  } catch (const eegid::Error& e) {
    set_error(eegid::errc_name(e.code()), e.what());
    return status_of(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    set_error("Io", std::string("Io: ") + e.what());
    return EEGID_ERR_DATA;
  } catch (const std::bad_alloc&) {
    set_error("OutOfMemory", "OutOfMemory: allocation failed");
    return EEGID_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error("Internal", std::string("Internal: ") + e.what());
    return EEGID_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw eegid::Error(eegid::Errc::kInvalidArgument, what);
}

std::string text(const char* s) { return s ? std::string(s) : std::string(); }

}  // namespace

extern "C" {

const char* eegid_version(void) { return "0.1.0"; }
const char* eegid_last_error(void) { return g_last_error.c_str(); }
const char* eegid_last_error_name(void) { return g_last_error_name.c_str(); }

/* Recordings */

eegid_status eegid_recording_read_edf(const char* path, eegid_recording** out) {
  return guarded([&] {
    require(path && out, "path and out must be non-null");
    *out = new eegid_recording{eegid::read_edf_file(path)};
  });
}

eegid_status eegid_recording_parse_edf(const uint8_t* bytes, size_t size, eegid_recording** out) {
  return guarded([&] {
    require(out && (bytes || size == 0), "bytes and out must be non-null");
    *out = new eegid_recording{eegid::parse_edf({bytes, size})};
  });
}

eegid_status eegid_recording_load_matrix(const char* path, double sampling_rate_hz,
                                         const char* const* channel_names, size_t num_channels,
                                         eegid_recording** out) {
  return guarded([&] {
    require(path && out && (channel_names || num_channels == 0), "null argument");
    std::vector<std::string> names;
    for (size_t i = 0; i < num_channels; ++i) {
      require(channel_names[i] != nullptr, "null channel name");
      names.emplace_back(channel_names[i]);
    }
    *out = new eegid_recording{eegid::load_matrix_file(path, sampling_rate_hz, names)};
  });
}

size_t eegid_recording_num_channels(const eegid_recording* r) { return r ? r->rec.num_channels() : 0; }
size_t eegid_recording_num_samples(const eegid_recording* r) { return r ? r->rec.num_samples() : 0; }
double eegid_recording_sampling_rate(const eegid_recording* r) { return r ? r->rec.sampling_rate_hz : 0.0; }

const char* eegid_recording_channel_name(const eegid_recording* r, size_t index) {
  if (!r || index >= r->rec.channel_names.size()) return nullptr;
  return r->rec.channel_names[index].c_str();
}

eegid_status eegid_recording_copy_data(const eegid_recording* r, double* out, size_t capacity) {
  return guarded([&] {
    require(r && out, "null argument");
    const auto v = r->rec.data.values();
    require(capacity >= v.size(), "output buffer too small");
    std::copy(v.begin(), v.end(), out);
  });
}

void eegid_recording_free(eegid_recording* r) { delete r; }

/* Corpus */

eegid_status eegid_corpus_ingest(const char* manifest_path, const char* cache_path, int workers,
                                 eegid_corpus** out, int* cache_hit) {
  return guarded([&] {
    require(manifest_path && out, "manifest path and out must be non-null");
    const auto manifest = eegid::load_manifest_file(manifest_path);
    bool hit = false;
    auto corpus = eegid::ingest(manifest, text(cache_path), workers < 1 ? 1 : workers, &hit);
    if (cache_hit) *cache_hit = hit ? 1 : 0;
    *out = new eegid_corpus{std::move(corpus)};
  });
}

size_t eegid_corpus_size(const eegid_corpus* c) { return c ? c->corpus.recordings.size() : 0; }
uint64_t eegid_corpus_hash(const eegid_corpus* c) { return c ? c->corpus.content_hash : 0; }

eegid_status eegid_corpus_recording_info(const eegid_corpus* c, size_t index,
                                         eegid_recording_info* out) {
  return guarded([&] {
    require(c && out, "null argument");
    require(index < c->corpus.recordings.size(), "recording index out of range");
    const auto& r = c->corpus.recordings[index];
    out->subject_id = r.subject_id.c_str();
    out->dataset_id = r.dataset_id.c_str();
    out->condition = eegid::condition_name(r.condition);
    out->sampling_rate_hz = r.sampling_rate_hz;
    out->num_channels = r.num_channels();
    out->num_samples = r.num_samples();
  });
}

eegid_status eegid_corpus_recording(const eegid_corpus* c, size_t index, eegid_recording** out) {
  return guarded([&] {
    require(c && out, "null argument");
    require(index < c->corpus.recordings.size(), "recording index out of range");
    *out = new eegid_recording{c->corpus.recordings[index]};
  });
}

void eegid_corpus_free(eegid_corpus* c) { delete c; }

/* Features */

void eegid_feature_options_init(eegid_feature_options* o) {
  if (!o) return;
  o->metric = "PLV";
  o->graph_metric = nullptr;
  o->band = "gamma";
  o->channels = "common_56";
  o->condition = "resting";
  o->epoch_length_s = 4.0;
  o->notch_hz = 50.0;
  o->notch_q = 30.0;
  o->filter_order = 4;
  o->workers = 1;
}

eegid_status eegid_features_compute(const eegid_corpus* c, const eegid_feature_options* o,
                                    eegid_features** out) {
  return guarded([&] {
    require(c && o && out, "null argument");
    eegid::FeatureSpec spec;
    const auto metric = eegid::fc::parse_metric(text(o->metric));
    if (!metric) {
      throw eegid::Error(eegid::Errc::kInvalidArgument,
                         "unknown metric '" + text(o->metric) + "' (valid: COR, PLV, PLI)");
    }
    spec.metric = *metric;
    const std::string gm = text(o->graph_metric);
    if (!gm.empty() && gm != "none") {
      const auto g = eegid::graph::parse_node_metric(gm);
      if (!g) {
        throw eegid::Error(eegid::Errc::kInvalidArgument,
                           "unknown graph metric '" + gm + "' (valid: none, ND, EC, BC, CC)");
      }
      spec.node_metric = *g;
    }
    const auto band = eegid::dsp::parse_band(text(o->band));
    if (!band) {
      throw eegid::Error(eegid::Errc::kInvalidArgument,
                         "unknown band '" + text(o->band) +
                             "' (valid: delta, theta, alpha, beta1, beta2, gamma, broadband)");
    }
    spec.band = *band;
    spec.epoch_length_s = o->epoch_length_s;
    const auto policy = eegid::parse_channel_policy(text(o->channels));
    if (!policy) {
      throw eegid::Error(eegid::Errc::kInvalidArgument,
                         "unknown channel policy '" + text(o->channels) +
                             "' (valid: common_56, ten_twenty_21)");
    }
    const auto condition = eegid::parse_condition(text(o->condition));
    if (!condition) {
      throw eegid::Error(eegid::Errc::kInvalidArgument,
                         "unknown condition '" + text(o->condition) + "' (valid: resting, task)");
    }
    eegid::PreprocessOptions pre{o->notch_hz, o->notch_q, o->filter_order};
    auto table = eegid::cached_features(c->corpus, spec, *policy, *condition, pre, "",
                                        o->workers < 1 ? 1 : o->workers);
    auto labels = table.class_labels();
    *out = new eegid_features{std::move(table), std::move(labels)};
  });
}

size_t eegid_features_rows(const eegid_features* f) { return f ? f->table.rows() : 0; }
size_t eegid_features_cols(const eegid_features* f) { return f ? f->table.values.cols() : 0; }

const char* eegid_features_column_name(const eegid_features* f, size_t col) {
  if (!f || col >= f->table.columns.size()) return nullptr;
  return f->table.columns[col].c_str();
}

const char* eegid_features_label(const eegid_features* f, size_t row) {
  if (!f || row >= f->labels.size()) return nullptr;
  return f->labels[row].c_str();
}

eegid_status eegid_features_copy_values(const eegid_features* f, double* out, size_t capacity) {
  return guarded([&] {
    require(f && out, "null argument");
    const auto v = f->table.values.values();
    require(capacity >= v.size(), "output buffer too small");
    std::copy(v.begin(), v.end(), out);
  });
}

eegid_status eegid_features_write_csv(const eegid_features* f, const char* path) {
  return guarded([&] {
    require(f && path, "null argument");
    std::ofstream out(path);
    if (!out) throw eegid::Error(eegid::Errc::kIo, std::string("cannot write ") + path);
    eegid::write_feature_csv(out, f->table);
    if (!out) throw eegid::Error(eegid::Errc::kIo, std::string("failed writing ") + path);
  });
}

void eegid_features_free(eegid_features* f) { delete f; }

/* Models */

eegid_status eegid_model_train(const double* x, size_t rows, size_t cols, const char* const* labels,
                               double c, double gamma, int class_weighting, eegid_model** out) {
  return guarded([&] {
    require(x && labels && out, "null argument");
    eegid::Matrix m(rows, cols);
    std::copy(x, x + rows * cols, m.values().begin());
    std::vector<std::string> y;
    for (size_t i = 0; i < rows; ++i) {
      require(labels[i] != nullptr, "null label");
      y.emplace_back(labels[i]);
    }
    eegid::svm::OvrOptions opt;
    opt.class_weighting = class_weighting != 0;
    *out = new eegid_model{eegid::svm::train_ovr(m, y, {c, gamma}, opt)};
  });
}

eegid_status eegid_model_train_features(const eegid_features* f, double c, double gamma,
                                        eegid_model** out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = new eegid_model{eegid::svm::train_ovr(f->table.values, f->labels, {c, gamma})};
  });
}

size_t eegid_model_num_classes(const eegid_model* m) { return m ? m->model.classes().size() : 0; }
size_t eegid_model_dimension(const eegid_model* m) { return m ? m->model.dimension() : 0; }

const char* eegid_model_class(const eegid_model* m, size_t index) {
  if (!m || index >= m->model.classes().size()) return nullptr;
  return m->model.classes()[index].c_str();
}

eegid_status eegid_model_decision_values(const eegid_model* m, const double* x, size_t dimension,
                                         double* out, size_t capacity) {
  return guarded([&] {
    require(m && x && out, "null argument");
    require(capacity >= m->model.classes().size(), "output buffer too small");
    const auto v = m->model.decision_values(std::span<const double>(x, dimension));
    std::copy(v.begin(), v.end(), out);
  });
}

eegid_status eegid_model_predict(const eegid_model* m, const double* x, size_t dimension,
                                 size_t* class_index) {
  return guarded([&] {
    require(m && x && class_index, "null argument");
    const auto v = m->model.decision_values(std::span<const double>(x, dimension));
    *class_index = eegid::svm::argmax_class(v);
  });
}

eegid_status eegid_model_save(const eegid_model* m, const char* path) {
  return guarded([&] {
    require(m && path, "null argument");
    eegid::svm::save_model_file(path, m->model);
  });
}

eegid_status eegid_model_load(const char* path, eegid_model** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new eegid_model{eegid::svm::load_model_file(path)};
  });
}

void eegid_model_free(eegid_model* m) { delete m; }

/* Evaluation */

void eegid_run_overrides_init(eegid_run_overrides* o) {
  if (!o) return;
  o->manifest_path = nullptr;
  o->output_dir = nullptr;
  o->has_seed = 0;
  o->seed = 0;
  o->workers = -1;
  o->notch_hz = -1.0;
  o->notch_q = -1.0;
  o->filter_order = -1;
  o->quiet = 0;
}

eegid_status eegid_evaluate(const char* config_path, const eegid_run_overrides* o,
                            size_t* num_completed, size_t* num_failed) {
  eegid::RunResult result;
  const eegid_status st = guarded([&] {
    require(config_path != nullptr, "config path must be non-null");
    eegid::RunConfig cfg = eegid::load_run_config_file(config_path);
    bool quiet = false;
    if (o) {
      if (o->manifest_path) cfg.manifest_path = o->manifest_path;
      if (o->output_dir) cfg.output_dir = o->output_dir;
      if (o->has_seed) cfg.seed = o->seed;
      if (o->workers >= 1) cfg.workers = o->workers;
      if (o->notch_hz >= 0.0) cfg.preprocess.notch_hz = o->notch_hz;
      if (o->notch_q > 0.0) cfg.preprocess.notch_q = o->notch_q;
      if (o->filter_order >= 0) cfg.preprocess.filter_order = o->filter_order;
      quiet = o->quiet != 0;
    }
    if (cfg.manifest_path.empty()) {
      throw eegid::Error(eegid::Errc::kInvalidArgument, "no manifest given");
    }
    (void)cfg.experiments();
    const auto manifest = eegid::load_manifest_file(cfg.manifest_path);
    std::ostream* progress = quiet ? nullptr : &std::cerr;
    bool hit = false;
    const auto corpus =
        eegid::ingest(manifest, (std::filesystem::path(cfg.effective_cache_dir()) / "corpus.bin").string(),
                      cfg.workers, &hit);
    if (progress) {
      *progress << "corpus: " << corpus.recordings.size() << " recordings"
                << (hit ? " (cache hit)" : "") << std::endl;
    }
    result = eegid::run_evaluation(cfg, corpus, progress);
    if (!result.failures.empty()) {
      const auto& f = result.failures.front();
      throw eegid::Error(f.code, f.name + ": " + f.message);
    }
  });
  if (num_completed) *num_completed = result.reports.size();
  if (num_failed) *num_failed = result.failures.size();
  return st;
}

eegid_status eegid_report(const char* output_dir, size_t* num_reports) {
  return guarded([&] {
    require(output_dir != nullptr, "output directory must be non-null");
    const auto summaries = eegid::report::load_report_summaries(output_dir);
    eegid::report::write_rollups(output_dir, summaries);
    if (num_reports) *num_reports = summaries.size();
  });
}

}  // extern "C"
