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

#ifndef EEGID_EEGID_H_
#define EEGID_EEGID_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(EEGID_BUILDING_LIBRARY)
#define EEGID_API __declspec(dllexport)
#else
#define EEGID_API __declspec(dllimport)
#endif
#else
#define EEGID_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one of these; the message of the
 * last failure on the calling thread is available from eegid_last_error(). */
typedef enum {
  EEGID_OK = 0,
  EEGID_ERR_USAGE = 1,    /* invalid argument or configuration */
  EEGID_ERR_DATA = 2,     /* unreadable or inconsistent input data */
  EEGID_ERR_NUMERIC = 3,  /* numerical failure */
  EEGID_ERR_INTERNAL = 4
} eegid_status;

typedef struct eegid_recording eegid_recording;
typedef struct eegid_corpus eegid_corpus;
typedef struct eegid_features eegid_features;
typedef struct eegid_model eegid_model;

EEGID_API const char* eegid_version(void);
/* "ErrorName: message" of the last failure on this thread, "" if none. */
EEGID_API const char* eegid_last_error(void);
/* Name of the error code of the last failure ("MissingChannel", ...). */
EEGID_API const char* eegid_last_error_name(void);

/* Recordings ------------------------------------------------------------ */

EEGID_API eegid_status eegid_recording_read_edf(const char* path, eegid_recording** out);
EEGID_API eegid_status eegid_recording_parse_edf(const uint8_t* bytes, size_t size,
                                                 eegid_recording** out);
EEGID_API eegid_status eegid_recording_load_matrix(const char* path, double sampling_rate_hz,
                                                   const char* const* channel_names,
                                                   size_t num_channels, eegid_recording** out);
EEGID_API size_t eegid_recording_num_channels(const eegid_recording* rec);
EEGID_API size_t eegid_recording_num_samples(const eegid_recording* rec);
EEGID_API double eegid_recording_sampling_rate(const eegid_recording* rec);
/* NULL when index is out of range. */
EEGID_API const char* eegid_recording_channel_name(const eegid_recording* rec, size_t index);
/* Copies channels x samples values row-major; capacity counts doubles. */
EEGID_API eegid_status eegid_recording_copy_data(const eegid_recording* rec, double* out,
                                                 size_t capacity);
EEGID_API void eegid_recording_free(eegid_recording* rec);

/* Corpus ---------------------------------------------------------------- */

/* Builds the corpus of a manifest. When cache_path is non-NULL a cache with
 * a matching content hash is reused, otherwise it is (re)written. */
EEGID_API eegid_status eegid_corpus_ingest(const char* manifest_path, const char* cache_path,
                                           int workers, eegid_corpus** out, int* cache_hit);
EEGID_API size_t eegid_corpus_size(const eegid_corpus* corpus);
EEGID_API uint64_t eegid_corpus_hash(const eegid_corpus* corpus);

typedef struct {
  const char* subject_id;  /* owned by the corpus */
  const char* dataset_id;
  const char* condition;   /* "resting" or "task" */
  double sampling_rate_hz;
  size_t num_channels;
  size_t num_samples;
} eegid_recording_info;

EEGID_API eegid_status eegid_corpus_recording_info(const eegid_corpus* corpus, size_t index,
                                                   eegid_recording_info* out);
/* A copy of one recording; free it with eegid_recording_free. */
EEGID_API eegid_status eegid_corpus_recording(const eegid_corpus* corpus, size_t index,
                                              eegid_recording** out);
EEGID_API void eegid_corpus_free(eegid_corpus* corpus);

/* Features -------------------------------------------------------------- */

typedef struct {
  const char* metric;        /* "COR", "PLV", "PLI" */
  const char* graph_metric;  /* NULL or "none" for FC edges; "ND", "EC", "BC", "CC" */
  const char* band;          /* "delta" ... "gamma", "broadband" */
  const char* channels;      /* "common_56" or "ten_twenty_21" */
  const char* condition;     /* "resting" or "task" */
  double epoch_length_s;
  double notch_hz;           /* <= 0 disables the notch */
  double notch_q;
  int filter_order;
  int workers;
} eegid_feature_options;

/* PLV, gamma, common_56, resting, 4 s, 50 Hz notch with q 30, order 4, 1 worker. */
EEGID_API void eegid_feature_options_init(eegid_feature_options* options);
EEGID_API eegid_status eegid_features_compute(const eegid_corpus* corpus,
                                              const eegid_feature_options* options,
                                              eegid_features** out);
EEGID_API size_t eegid_features_rows(const eegid_features* features);
EEGID_API size_t eegid_features_cols(const eegid_features* features);
EEGID_API const char* eegid_features_column_name(const eegid_features* features, size_t col);
/* "dataset/subject" of a row. */
EEGID_API const char* eegid_features_label(const eegid_features* features, size_t row);
EEGID_API eegid_status eegid_features_copy_values(const eegid_features* features, double* out,
                                                  size_t capacity);
EEGID_API eegid_status eegid_features_write_csv(const eegid_features* features, const char* path);
EEGID_API void eegid_features_free(eegid_features* features);

/* Models ---------------------------------------------------------------- */

/* One-vs-rest RBF machine on rows x cols features, row-major. */
EEGID_API eegid_status eegid_model_train(const double* x, size_t rows, size_t cols,
                                         const char* const* labels, double c, double gamma,
                                         int class_weighting, eegid_model** out);
EEGID_API eegid_status eegid_model_train_features(const eegid_features* features, double c,
                                                  double gamma, eegid_model** out);
EEGID_API size_t eegid_model_num_classes(const eegid_model* model);
EEGID_API size_t eegid_model_dimension(const eegid_model* model);
EEGID_API const char* eegid_model_class(const eegid_model* model, size_t index);
/* One decision value per class, in class order. */
EEGID_API eegid_status eegid_model_decision_values(const eegid_model* model, const double* x,
                                                   size_t dimension, double* out,
                                                   size_t capacity);
EEGID_API eegid_status eegid_model_predict(const eegid_model* model, const double* x,
                                           size_t dimension, size_t* class_index);
EEGID_API eegid_status eegid_model_save(const eegid_model* model, const char* path);
EEGID_API eegid_status eegid_model_load(const char* path, eegid_model** out);
EEGID_API void eegid_model_free(eegid_model* model);

/* Evaluation ------------------------------------------------------------ */

/* Values that replace the run configuration's settings. NULL strings,
 * negative numbers and has_seed == 0 leave the configuration unchanged. */
typedef struct {
  const char* manifest_path;
  const char* output_dir;
  int has_seed;
  uint64_t seed;
  int workers;
  double notch_hz;
  double notch_q;
  int filter_order;
  int quiet;  /* suppress progress lines on stderr */
} eegid_run_overrides;

EEGID_API void eegid_run_overrides_init(eegid_run_overrides* overrides);

/* Runs every experiment of a run configuration and writes reports under the
 * output directory. Returns EEGID_OK only when all experiments completed; on
 * partial failure the status of the first failure is returned. */
EEGID_API eegid_status eegid_evaluate(const char* config_path, const eegid_run_overrides* overrides,
                                      size_t* num_completed, size_t* num_failed);

/* Rebuilds the roll-up tables from the reports found under output_dir. */
EEGID_API eegid_status eegid_report(const char* output_dir, size_t* num_reports);

#ifdef __cplusplus
}
#endif

#endif /* EEGID_EEGID_H_ */
