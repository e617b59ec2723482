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
#include <span>
#include <string>
#include <vector>

#include "eegid/matrix.hpp"

namespace eegid::svm {

// Column-wise z-scoring fitted on training rows only.
struct Standardizer {
  std::vector<double> means;
  std::vector<double> stds;  // floored at 1e-12
  std::vector<std::uint8_t> constant;  // 1 where the fitted column was constant

  std::size_t dimension() const { return means.size(); }

  friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

// Errors: kTooFewRows when X has fewer than 2 rows.
Standardizer fit_standardizer(const Matrix& x);
// Constant columns of the fitting set map to 0. Errors: kDimensionMismatch.
Matrix apply_standardizer(const Standardizer& s, const Matrix& x);
std::vector<double> apply_standardizer(const Standardizer& s, std::span<const double> x);

struct SvmHyperparams {
  double c = 1.0;
  double gamma = 0.1;

  friend bool operator==(const SvmHyperparams&, const SvmHyperparams&) = default;
};

// exp(-gamma * |x - y|^2). Errors: kDimensionMismatch, kInvalidArgument.
double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma);

struct SmoOptions {
  double tolerance = 1e-3;       // stop when the maximal KKT violation is below
  long max_iterations = 1000000;
  std::size_t cache_bytes = 256u << 20;  // LRU kernel-row cache budget
  // Per-class box constraints C * weight; 1.0 gives the unweighted machine.
  double positive_weight = 1.0;
  double negative_weight = 1.0;
};

struct BinarySvmModel {
  Matrix support_vectors;
  std::vector<double> dual_coef;  // alpha_i * y_i
  double bias = 0.0;
  SvmHyperparams params;
  bool iteration_cap_reached = false;
  long iterations = 0;

  double decision_value(std::span<const double> x) const;
};

// Dual solution of one binary problem over n training points.
struct SmoSolution {
  std::vector<double> alpha;
  double bias = 0.0;
  long iterations = 0;
  bool iteration_cap_reached = false;
};

// Solves the C-SVM dual for labels y in {-1, +1} against a precomputed n x n
// kernel matrix. Working pairs are chosen by maximal KKT violation.
// Errors: kSingleClassInput, kDimensionMismatch.
SmoSolution solve_smo(const Matrix& kernel, std::span<const int> y, double c,
                      const SmoOptions& options = {});

// Trains on raw feature rows, computing kernel rows on demand through an
// LRU cache bounded by options.cache_bytes. Errors: kSingleClassInput,
// kTooFewRows, kDimensionMismatch, kInvalidArgument.
BinarySvmModel train_binary_smo(const Matrix& x, std::span<const int> y,
                                const SvmHyperparams& params, const SmoOptions& options = {});

// Squared Euclidean distances between every row of a and every row of b.
Matrix squared_distances(const Matrix& a, const Matrix& b);
// Squared distances among the rows of a (symmetric, zero diagonal).
Matrix squared_distances(const Matrix& a);
// exp(-gamma * d) element-wise.
Matrix rbf_from_distances(const Matrix& sq_dist, double gamma);

// One-vs-rest machine. Classes are sorted; member k separates classes[k]
// from the rest. Support vectors of all members live in one shared pool of
// standardized training rows.
class MulticlassSvmModel {
 public:
  struct Member {
    std::vector<std::uint32_t> support;  // rows of the pool
    std::vector<double> dual_coef;
    double bias = 0.0;
    bool iteration_cap_reached = false;

    friend bool operator==(const Member&, const Member&) = default;
  };

  MulticlassSvmModel() = default;
  MulticlassSvmModel(std::vector<std::string> classes, Standardizer standardizer,
                     Matrix pool, std::vector<Member> members, SvmHyperparams params);

  const std::vector<std::string>& classes() const { return classes_; }
  const Standardizer& standardizer() const { return standardizer_; }
  const SvmHyperparams& params() const { return params_; }
  const Matrix& pool() const { return pool_; }
  const std::vector<Member>& members() const { return members_; }
  std::size_t dimension() const { return standardizer_.dimension(); }

  // Stand-alone binary model of member k.
  BinarySvmModel binary_model(std::size_t k) const;

  // Decision value of every class for one raw (unstandardized) row.
  std::vector<double> decision_values(std::span<const double> x) const;
  // Decision values for every row of x, rows x classes.
  Matrix decision_values(const Matrix& x) const;

  std::string predict(std::span<const double> x) const;
  std::vector<std::string> predict(const Matrix& x) const;

  bool any_iteration_cap_reached() const;

  friend bool operator==(const MulticlassSvmModel&, const MulticlassSvmModel&) = default;

 private:
  std::vector<std::string> classes_;
  Standardizer standardizer_;
  Matrix pool_;
  std::vector<Member> members_;
  SvmHyperparams params_;
};

// Index of the largest decision value; the first (lowest sorted class) wins ties.
std::size_t argmax_class(std::span<const double> decision_values);

struct OvrOptions {
  SmoOptions smo;
  bool class_weighting = false;  // weight C by inverse class frequency
};

// Dense one-vs-rest solution over n training rows: coef[k][i] = alpha_i y_i
// for class k (zero for non-support rows).
struct OvrSolution {
  std::vector<std::string> classes;
  std::vector<std::vector<double>> coef;
  std::vector<double> bias;
  std::vector<std::uint8_t> iteration_cap_reached;
};

// Sorted distinct labels.
std::vector<std::string> sorted_classes(const std::vector<std::string>& labels);

// Errors: kTooFewClasses, kDimensionMismatch.
OvrSolution solve_ovr(const Matrix& kernel, const std::vector<std::string>& labels, double c,
                      const OvrOptions& options = {});

// Decision values (rows x classes) from the kernel between query rows and
// the n training rows the solution was fitted on.
Matrix ovr_decision_values(const OvrSolution& solution, const Matrix& cross_kernel);

// Fits the standardizer on x, then one binary problem per sorted label.
// Errors: kTooFewClasses, kDimensionMismatch, kTooFewRows.
MulticlassSvmModel train_ovr(const Matrix& x, const std::vector<std::string>& labels,
                             const SvmHyperparams& params, const OvrOptions& options = {});

// Same, reusing a precomputed kernel over already standardized rows.
MulticlassSvmModel train_ovr_precomputed(const Matrix& standardized_x, const Matrix& kernel,
                                         const std::vector<std::string>& labels,
                                         const Standardizer& standardizer,
                                         const SvmHyperparams& params,
                                         const OvrOptions& options = {});

// Versioned little-endian container: magic "EEGIDSVM", version, class table,
// standardizer, support pool and per-class coefficients.
void save_model(std::ostream& out, const MulticlassSvmModel& model);
MulticlassSvmModel load_model(std::istream& in);  // Errors: kMalformedModel
void save_model_file(const std::string& path, const MulticlassSvmModel& model);
MulticlassSvmModel load_model_file(const std::string& path);

}  // namespace eegid::svm
