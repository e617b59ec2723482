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

#include "eegid/corpus.hpp"
#include "eegid/features.hpp"
#include "eegid/matrix.hpp"
#include "eegid/svm.hpp"

namespace eegid::eval {

// Assignment of rows to outer folds. Each subject's rows are shuffled and
// dealt round-robin over the folds, so every fold tests every subject.
struct FoldPlan {
  int k1 = 10;
  int k2 = 3;
  std::uint64_t seed = 0;
  std::vector<int> outer_fold;  // per row

  std::size_t size() const { return outer_fold.size(); }
  std::vector<std::size_t> test_rows(int fold) const;
  std::vector<std::size_t> train_rows(int fold) const;
  friend bool operator==(const FoldPlan&, const FoldPlan&) = default;
};

// Errors: kInvalidArgument when k1 < 2 or k2 < 2, kInsufficientEpochs naming
// the first subject with fewer than k1 rows.
FoldPlan make_fold_plan(const std::vector<std::string>& labels, int k1, int k2, std::uint64_t seed);

// Round-robin fold index per row without the k2 field; shared by outer and
// inner splits.
std::vector<int> assign_folds(const std::vector<std::string>& labels, int k, std::uint64_t seed);

struct HyperGrid {
  std::vector<double> c_values{0.1, 1.0, 10.0, 100.0};
  std::vector<double> gamma_values{1.0, 0.1, 0.01, 0.001};

  std::size_t size() const { return c_values.size() * gamma_values.size(); }
  // Grid points ordered by ascending C, then ascending gamma.
  std::vector<svm::SvmHyperparams> points() const;
};

struct GridAuditEntry {
  svm::SvmHyperparams params;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
};

struct GridSearchResult {
  svm::SvmHyperparams best;
  std::vector<GridAuditEntry> audit;  // empty when the grid has one point
};

// Mean inner-validation accuracy of every grid point over k2 folds; the best
// point wins, ties going to smaller C and then smaller gamma. Each inner
// standardizer is fitted on that fold's training rows only.
GridSearchResult grid_search(const Matrix& x, const std::vector<std::string>& labels,
                             const HyperGrid& grid, int k2, std::uint64_t seed,
                             const svm::OvrOptions& options = {});

struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<long>> counts;  // [truth][prediction]

  long total() const;
  long trace() const;
  double accuracy() const;
};

// Errors: kLengthMismatch, kUnknownLabel.
ConfusionMatrix confusion_matrix(const std::vector<std::string>& truth,
                                 const std::vector<std::string>& predicted,
                                 const std::vector<std::string>& classes);
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm);
// Binary 8-bit graymap, row-normalized: 0 = never predicted, 255 = always.
void write_confusion_pgm(std::ostream& out, const ConfusionMatrix& cm);

struct FoldResult {
  int fold = 0;
  svm::SvmHyperparams chosen;
  std::vector<GridAuditEntry> audit;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  std::vector<std::string> predictions;  // aligned with test_rows
  std::vector<double> standardizer_means;  // of the model trained on train_rows
  double accuracy = 0.0;
  bool iteration_cap_reached = false;
};

struct CvReport {
  std::vector<FoldResult> folds;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;       // pooled: trace / total
  double mean_fold_accuracy = 0.0;  // average of fold_accuracy
  double standard_error = 0.0;      // sample std of fold_accuracy / sqrt(k1)
  ConfusionMatrix confusion;
};

// Sample standard deviation of `values` divided by sqrt(values.size()).
double standard_error(const std::vector<double>& values);

// Outer folds run on up to `workers` threads; results are ordered by fold.
// Errors: kDimensionMismatch when x, labels and plan disagree in size.
CvReport run_nested_cv(const Matrix& x, const std::vector<std::string>& labels,
                       const FoldPlan& plan, const HyperGrid& grid,
                       const svm::OvrOptions& options = {}, int workers = 1);

struct ExperimentConfig {
  FeatureSpec feature;
  ChannelPolicy channels;
  Condition train_condition = Condition::kResting;
  Condition test_condition = Condition::kResting;
  std::uint64_t seed = 1;
  int k1 = 10;
  int k2 = 3;
  HyperGrid grid;
  svm::OvrOptions svm;
  PreprocessOptions preprocess;

  bool mismatched() const { return train_condition != test_condition; }
  // Stable identifier, e.g. "PLV_gamma_common_56_4s_resting-resting".
  std::string name() const;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t n_subjects = 0;
  std::size_t n_train_epochs = 0;
  std::size_t n_test_epochs = 0;
  std::size_t epochs_per_subject = 0;  // minimum over subjects, training condition
  std::size_t feature_dimension = 0;
  // Matched conditions: the nested cross-validation. Mismatched: a single
  // fold holding the train/test split.
  CvReport cv;
};

// Evaluates precomputed feature tables. For matched conditions `test` is
// ignored. Mismatched runs keep only subjects present in both tables.
ExperimentReport evaluate_features(const FeatureTable& train, const FeatureTable& test,
                                   const ExperimentConfig& config, int workers = 1);

// Full pipeline on a corpus: channel selection, preprocessing, band epochs,
// features, then evaluate_features. Errors: kMissingCondition, propagated.
ExperimentReport run_experiment(const std::vector<EegRecording>& corpus,
                                const ExperimentConfig& config, int workers = 1);

// Corpus restricted to the policy's channel set.
std::vector<EegRecording> apply_channel_policy(const std::vector<EegRecording>& corpus,
                                               const ChannelPolicy& policy);

}  // namespace eegid::eval
