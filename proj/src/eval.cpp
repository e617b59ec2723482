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

#include "eegid/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "eegid/error.hpp"
#include "eegid/parallel.hpp"

namespace eegid::eval {

namespace {

// Uniform index in [0, bound) by rejection, independent of the standard
// library's distribution implementations.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::map<std::string, std::vector<std::size_t>> rows_by_label(const std::vector<std::string>& labels) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  return groups;
}

template <class T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

double accuracy_of(const std::vector<std::string>& truth, const std::vector<std::string>& pred) {
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hit += truth[i] == pred[i];
  return truth.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(truth.size());
}

void check_grid(const HyperGrid& grid) {
  if (grid.size() == 0) throw Error(Errc::kInvalidArgument, "hyperparameter grid is empty");
  for (double c : grid.c_values) {
    if (!(c > 0.0)) throw Error(Errc::kInvalidArgument, "grid C values must be positive");
  }
  for (double g : grid.gamma_values) {
    if (!(g > 0.0)) throw Error(Errc::kInvalidArgument, "grid gamma values must be positive");
  }
}

}  // namespace

std::vector<std::size_t> FoldPlan::test_rows(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < outer_fold.size(); ++i) {
    if (outer_fold[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::train_rows(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < outer_fold.size(); ++i) {
    if (outer_fold[i] != fold) out.push_back(i);
  }
  return out;
}

std::vector<int> assign_folds(const std::vector<std::string>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw Error(Errc::kInvalidArgument, "fold count must be at least 2");
  std::mt19937_64 rng(seed);
  std::vector<int> fold(labels.size(), 0);
  for (auto& [label, rows] : rows_by_label(labels)) {
    for (std::size_t i = rows.size(); i > 1; --i) {
      std::swap(rows[i - 1], rows[uniform_index(rng, i)]);
    }
    for (std::size_t j = 0; j < rows.size(); ++j) fold[rows[j]] = static_cast<int>(j % k);
  }
  return fold;
}

FoldPlan make_fold_plan(const std::vector<std::string>& labels, int k1, int k2, std::uint64_t seed) {
  if (k1 < 2) throw Error(Errc::kInvalidArgument, "k1 must be at least 2 (no held-out data)");
  if (k2 < 2) throw Error(Errc::kInvalidArgument, "k2 must be at least 2");
  for (const auto& [label, rows] : rows_by_label(labels)) {
    if (rows.size() < static_cast<std::size_t>(k1)) {
      throw Error(Errc::kInsufficientEpochs, label + " has " + std::to_string(rows.size()) +
                                                 " epochs, need at least " + std::to_string(k1));
    }
  }
  FoldPlan plan;
  plan.k1 = k1;
  plan.k2 = k2;
  plan.seed = seed;
  plan.outer_fold = assign_folds(labels, k1, seed);
  return plan;
}

std::vector<svm::SvmHyperparams> HyperGrid::points() const {
  auto cs = c_values;
  auto gs = gamma_values;
  std::sort(cs.begin(), cs.end());
  std::sort(gs.begin(), gs.end());
  std::vector<svm::SvmHyperparams> out;
  for (double c : cs) {
    for (double g : gs) out.push_back({c, g});
  }
  return out;
}

GridSearchResult grid_search(const Matrix& x, const std::vector<std::string>& labels,
                             const HyperGrid& grid, int k2, std::uint64_t seed,
                             const svm::OvrOptions& options) {
  check_grid(grid);
  if (x.rows() != labels.size()) {
    throw Error(Errc::kDimensionMismatch, "row count differs from label count");
  }
  const auto points = grid.points();
  GridSearchResult result;
  if (points.size() == 1) {
    result.best = points.front();
    return result;
  }

  auto cs = grid.c_values;
  auto gs = grid.gamma_values;
  std::sort(cs.begin(), cs.end());
  std::sort(gs.begin(), gs.end());
  for (const auto& p : points) result.audit.push_back({p, {}, 0.0});

  const std::vector<int> fold = assign_folds(labels, k2, seed);
  for (int v = 0; v < k2; ++v) {
    std::vector<std::size_t> tr, va;
    for (std::size_t i = 0; i < fold.size(); ++i) (fold[i] == v ? va : tr).push_back(i);
    if (va.empty()) continue;
    const auto y_tr = pick(labels, tr);
    const auto y_va = pick(labels, va);
    if (svm::sorted_classes(y_tr).size() < 2) {
      throw Error(Errc::kTooFewClasses, "inner training fold holds a single class");
    }
    const Matrix x_tr = x.select_rows(tr);
    const svm::Standardizer s = svm::fit_standardizer(x_tr);
    const Matrix z_tr = svm::apply_standardizer(s, x_tr);
    const Matrix z_va = svm::apply_standardizer(s, x.select_rows(va));
    const Matrix d_tr = svm::squared_distances(z_tr);
    const Matrix d_va = svm::squared_distances(z_va, z_tr);

    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      const Matrix k_tr = svm::rbf_from_distances(d_tr, gs[gi]);
      const Matrix k_va = svm::rbf_from_distances(d_va, gs[gi]);
      for (std::size_t ci = 0; ci < cs.size(); ++ci) {
        const auto sol = svm::solve_ovr(k_tr, y_tr, cs[ci], options);
        const Matrix dv = svm::ovr_decision_values(sol, k_va);
        std::vector<std::string> pred(va.size());
        for (std::size_t r = 0; r < va.size(); ++r) pred[r] = sol.classes[svm::argmax_class(dv.row(r))];
        result.audit[ci * gs.size() + gi].fold_accuracy.push_back(accuracy_of(y_va, pred));
      }
    }
  }

  double best = -1.0;
  for (auto& entry : result.audit) {
    double sum = 0.0;
    for (double a : entry.fold_accuracy) sum += a;
    entry.mean_accuracy = entry.fold_accuracy.empty()
                              ? 0.0
                              : sum / static_cast<double>(entry.fold_accuracy.size());
    if (entry.mean_accuracy > best) {
      best = entry.mean_accuracy;
      result.best = entry.params;
    }
  }
  return result;
}

long ConfusionMatrix::total() const {
  long t = 0;
  for (const auto& row : counts) {
    for (long v : row) t += v;
  }
  return t;
}

long ConfusionMatrix::trace() const {
  long t = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
  return t;
}

double ConfusionMatrix::accuracy() const {
  const long n = total();
  return n == 0 ? 0.0 : static_cast<double>(trace()) / static_cast<double>(n);
}

ConfusionMatrix confusion_matrix(const std::vector<std::string>& truth,
                                 const std::vector<std::string>& predicted,
                                 const std::vector<std::string>& classes) {
  if (truth.size() != predicted.size()) {
    throw Error(Errc::kLengthMismatch, std::to_string(truth.size()) + " labels vs " +
                                           std::to_string(predicted.size()) + " predictions");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], i);
  ConfusionMatrix cm;
  cm.classes = classes;
  cm.counts.assign(classes.size(), std::vector<long>(classes.size(), 0));
  auto lookup = [&](const std::string& label) {
    auto it = index.find(label);
    if (it == index.end()) throw Error(Errc::kUnknownLabel, "'" + label + "'");
    return it->second;
  };
  for (std::size_t i = 0; i < truth.size(); ++i) ++cm.counts[lookup(truth[i])][lookup(predicted[i])];
  return cm;
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
  out << "truth\\predicted";
  for (const auto& c : cm.classes) out << ',' << c;
  out << '\n';
  for (std::size_t t = 0; t < cm.classes.size(); ++t) {
    out << cm.classes[t];
    for (long v : cm.counts[t]) out << ',' << v;
    out << '\n';
  }
}

void write_confusion_pgm(std::ostream& out, const ConfusionMatrix& cm) {
  const std::size_t n = cm.classes.size();
  out << "P5\n" << n << ' ' << n << "\n255\n";
  for (std::size_t t = 0; t < n; ++t) {
    long sum = 0;
    for (long v : cm.counts[t]) sum += v;
    for (std::size_t p = 0; p < n; ++p) {
      const long v = cm.counts[t][p];
      const auto level = sum == 0 ? 0 : static_cast<unsigned char>((255 * v + sum / 2) / sum);
      out.put(static_cast<char>(level));
    }
  }
}

double standard_error(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return sd / std::sqrt(static_cast<double>(n));
}

namespace {

void finish_report(CvReport& report, const std::vector<std::string>& labels,
                   const std::vector<std::string>& classes) {
  std::vector<std::string> truth, pred;
  double sum = 0.0;
  for (const auto& f : report.folds) {
    report.fold_accuracy.push_back(f.accuracy);
    sum += f.accuracy;
    for (std::size_t i = 0; i < f.test_rows.size(); ++i) {
      truth.push_back(labels[f.test_rows[i]]);
      pred.push_back(f.predictions[i]);
    }
  }
  report.confusion = confusion_matrix(truth, pred, classes);
  report.mean_accuracy = report.confusion.accuracy();
  report.mean_fold_accuracy = report.folds.empty() ? 0.0 : sum / static_cast<double>(report.folds.size());
  report.standard_error = standard_error(report.fold_accuracy);
}

FoldResult train_and_test(const Matrix& x_train, const std::vector<std::string>& y_train,
                          const Matrix& x_test, const std::vector<std::string>& y_test,
                          const HyperGrid& grid, int k2, std::uint64_t seed,
                          const svm::OvrOptions& options) {
  FoldResult r;
  auto gs = grid_search(x_train, y_train, grid, k2, seed, options);
  r.chosen = gs.best;
  r.audit = std::move(gs.audit);
  const auto model = svm::train_ovr(x_train, y_train, r.chosen, options);
  r.standardizer_means = model.standardizer().means;
  r.iteration_cap_reached = model.any_iteration_cap_reached();
  r.predictions = model.predict(x_test);
  r.accuracy = accuracy_of(y_test, r.predictions);
  return r;
}

}  // namespace

CvReport run_nested_cv(const Matrix& x, const std::vector<std::string>& labels,
                       const FoldPlan& plan, const HyperGrid& grid,
                       const svm::OvrOptions& options, int workers) {
  if (x.rows() != labels.size() || plan.size() != labels.size()) {
    throw Error(Errc::kDimensionMismatch, "features, labels and fold plan differ in size");
  }
  check_grid(grid);
  CvReport report;
  report.folds.resize(static_cast<std::size_t>(plan.k1));
  parallel_for(report.folds.size(), workers, [&](std::size_t f) {
    const int fold = static_cast<int>(f);
    const auto train = plan.train_rows(fold);
    const auto test = plan.test_rows(fold);
    FoldResult r = train_and_test(x.select_rows(train), pick(labels, train), x.select_rows(test),
                                  pick(labels, test), grid, plan.k2,
                                  derive_seed(plan.seed, f), options);
    r.fold = fold;
    r.train_rows = train;
    r.test_rows = test;
    report.folds[f] = std::move(r);
  });
  finish_report(report, labels, svm::sorted_classes(labels));
  return report;
}

std::string ExperimentConfig::name() const {
  std::ostringstream s;
  s << feature.feature_name() << '_' << dsp::band_name(feature.band) << '_' << channels.name()
    << '_' << feature.epoch_length_s << "s_" << condition_name(train_condition) << '-'
    << condition_name(test_condition);
  return s.str();
}

std::vector<EegRecording> apply_channel_policy(const std::vector<EegRecording>& corpus,
                                               const ChannelPolicy& policy) {
  const ChannelSet set = policy.channel_set();
  std::vector<EegRecording> out;
  out.reserve(corpus.size());
  for (const auto& r : corpus) out.push_back(select_channels(r, set));
  return out;
}

namespace {

void fill_counts(ExperimentReport& rep, const std::vector<std::string>& train_labels) {
  std::map<std::string, std::size_t> per;
  for (const auto& l : train_labels) ++per[l];
  rep.n_subjects = per.size();
  rep.epochs_per_subject = per.empty() ? 0 : per.begin()->second;
  for (const auto& [l, n] : per) rep.epochs_per_subject = std::min(rep.epochs_per_subject, n);
}

}  // namespace

ExperimentReport evaluate_features(const FeatureTable& train, const FeatureTable& test,
                                   const ExperimentConfig& config, int workers) {
  ExperimentReport rep;
  rep.config = config;
  rep.feature_dimension = train.values.cols();
  const auto train_labels = train.class_labels();

  if (!config.mismatched()) {
    fill_counts(rep, train_labels);
    rep.n_train_epochs = train.rows();
    rep.n_test_epochs = train.rows();
    const FoldPlan plan = make_fold_plan(train_labels, config.k1, config.k2, config.seed);
    rep.cv = run_nested_cv(train.values, train_labels, plan, config.grid, config.svm, workers);
    return rep;
  }

  if (test.values.cols() != train.values.cols()) {
    throw Error(Errc::kDimensionMismatch, "train and test feature dimensions differ");
  }
  const auto test_labels_all = test.class_labels();
  const auto train_classes = svm::sorted_classes(train_labels);
  const auto test_classes = svm::sorted_classes(test_labels_all);
  std::vector<std::string> common;
  std::set_intersection(train_classes.begin(), train_classes.end(), test_classes.begin(),
                        test_classes.end(), std::back_inserter(common));
  if (common.size() < 2) {
    throw Error(Errc::kMissingCondition, "fewer than 2 subjects recorded in both conditions");
  }
  auto keep = [&](const std::vector<std::string>& labels) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (std::binary_search(common.begin(), common.end(), labels[i])) rows.push_back(i);
    }
    return rows;
  };
  const auto tr = keep(train_labels);
  const auto te = keep(test_labels_all);
  const auto y_tr = pick(train_labels, tr);
  const auto y_te = pick(test_labels_all, te);
  fill_counts(rep, y_tr);
  rep.n_train_epochs = tr.size();
  rep.n_test_epochs = te.size();

  FoldResult r = train_and_test(train.values.select_rows(tr), y_tr, test.values.select_rows(te),
                                y_te, config.grid, config.k2, derive_seed(config.seed, 0),
                                config.svm);
  r.fold = 0;
  r.train_rows = tr;
  r.test_rows.resize(te.size());
  // Test rows index the test table; finish_report reads labels through them.
  for (std::size_t i = 0; i < te.size(); ++i) r.test_rows[i] = te[i];
  rep.cv.folds.push_back(std::move(r));
  finish_report(rep.cv, test_labels_all, common);
  return rep;
}

ExperimentReport run_experiment(const std::vector<EegRecording>& corpus,
                                const ExperimentConfig& config, int workers) {
  const auto selected = apply_channel_policy(corpus, config.channels);
  const FeatureTable train =
      compute_features(selected, config.feature, config.preprocess, config.train_condition, workers);
  if (!config.mismatched()) return evaluate_features(train, train, config, workers);
  const FeatureTable test =
      compute_features(selected, config.feature, config.preprocess, config.test_condition, workers);
  return evaluate_features(train, test, config, workers);
}

}  // namespace eegid::eval
