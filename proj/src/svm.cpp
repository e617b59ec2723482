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

#include "eegid/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <unordered_map>

#include "eegid/error.hpp"

namespace eegid::svm {

namespace {

constexpr double kStdFloor = 1e-12;
constexpr double kTau = 1e-12;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

// Kernel rows of a precomputed matrix.
class DenseRows {
 public:
  explicit DenseRows(const Matrix& k) : k_(k) {}
  std::size_t size() const { return k_.rows(); }
  const double* row(std::size_t i) { return k_.row(i).data(); }
  double diag(std::size_t i) const { return k_(i, i); }

 private:
  const Matrix& k_;
};

// RBF kernel rows computed on demand and kept in a bounded LRU cache.
class CachedRbfRows {
 public:
  CachedRbfRows(const Matrix& x, double gamma, std::size_t budget_bytes)
      : x_(x), gamma_(gamma) {
    const std::size_t row_bytes = std::max<std::size_t>(1, x.rows() * sizeof(double));
    capacity_ = std::max<std::size_t>(2, budget_bytes / row_bytes);
  }

  std::size_t size() const { return x_.rows(); }
  double diag(std::size_t) const { return 1.0; }

  const double* row(std::size_t i) {
    auto it = index_.find(i);
    if (it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second.data();
    }
    if (lru_.size() >= capacity_) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    std::vector<double> values(x_.rows());
    for (std::size_t j = 0; j < x_.rows(); ++j) {
      values[j] = std::exp(-gamma_ * squared_distance(x_.row(i), x_.row(j)));
    }
    lru_.emplace_front(i, std::move(values));
    index_[i] = lru_.begin();
    return lru_.front().second.data();
  }

 private:
  using Entry = std::pair<std::size_t, std::vector<double>>;
  const Matrix& x_;
  double gamma_;
  std::size_t capacity_;
  std::list<Entry> lru_;
  std::unordered_map<std::size_t, std::list<Entry>::iterator> index_;
};

template <class Rows>
SmoSolution solve(Rows& rows, std::span<const int> y, double c, const SmoOptions& opt) {
  const std::size_t n = rows.size();
  if (y.size() != n) throw Error(Errc::kDimensionMismatch, "label count differs from kernel size");
  bool has_pos = false, has_neg = false;
  for (int v : y) {
    if (v == 1) has_pos = true;
    else if (v == -1) has_neg = true;
    else throw Error(Errc::kInvalidArgument, "binary labels must be -1 or +1");
  }
  if (!has_pos || !has_neg) throw Error(Errc::kSingleClassInput, "both classes must be present");
  if (!(c > 0.0)) throw Error(Errc::kInvalidArgument, "C must be positive");

  const double c_pos = c * opt.positive_weight;
  const double c_neg = c * opt.negative_weight;
  auto box = [&](std::size_t t) { return y[t] > 0 ? c_pos : c_neg; };

  SmoSolution sol;
  sol.alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a
  auto& alpha = sol.alpha;

  auto in_up = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] < box(t)) || (y[t] < 0 && alpha[t] > 0.0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] > 0.0) || (y[t] < 0 && alpha[t] < box(t));
  };

  for (;;) {
    if (sol.iterations >= opt.max_iterations) {
      sol.iteration_cap_reached = true;
      break;
    }
    double g_max = -std::numeric_limits<double>::infinity();
    double g_min = std::numeric_limits<double>::infinity();
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > g_max) {
        g_max = v;
        i = t;
      }
      if (in_low(t) && v < g_min) {
        g_min = v;
        j = t;
      }
    }
    if (i == n || j == n || g_max - g_min < opt.tolerance) break;

    const double* ki = rows.row(i);
    const double* kj = rows.row(j);
    const double yi = y[i], yj = y[j];
    const double qij = yi * yj * ki[j];
    const double ci = box(i), cj = box(j);
    const double old_i = alpha[i], old_j = alpha[j];

    if (y[i] != y[j]) {
      double quad = rows.diag(i) + rows.diag(j) + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > ci - cj) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = ci - diff;
        }
      } else if (alpha[j] > cj) {
        alpha[j] = cj;
        alpha[i] = cj + diff;
      }
    } else {
      double quad = rows.diag(i) + rows.diag(j) - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > ci) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = sum - ci;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > cj) {
        if (alpha[j] > cj) {
          alpha[j] = cj;
          alpha[i] = sum - cj;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double di = (alpha[i] - old_i) * yi;
    const double dj = (alpha[j] - old_j) * yj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += y[t] * (ki[t] * di + kj[t] * dj);
    ++sol.iterations;
  }

  // Bias from free vectors, or the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= box(t)) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  sol.bias = -rho;
  return sol;
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(Errc::kInvalidArgument, "gamma must be positive");
  }
}

}  // namespace

Standardizer fit_standardizer(const Matrix& x) {
  if (x.rows() < 2) throw Error(Errc::kTooFewRows, "standardizer needs at least 2 rows");
  const std::size_t d = x.cols();
  const double n = static_cast<double>(x.rows());
  Standardizer s;
  s.means.assign(d, 0.0);
  s.stds.assign(d, 0.0);
  s.constant.assign(d, 0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < d; ++c) s.means[c] += row[c];
  }
  for (double& m : s.means) m /= n;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < d; ++c) {
      const double dv = row[c] - s.means[c];
      s.stds[c] += dv * dv;
    }
  }
  for (std::size_t c = 0; c < d; ++c) {
    s.stds[c] = std::sqrt(s.stds[c] / n);
    if (s.stds[c] < kStdFloor) {
      s.stds[c] = kStdFloor;
      s.constant[c] = 1;
    }
  }
  return s;
}

std::vector<double> apply_standardizer(const Standardizer& s, std::span<const double> x) {
  if (x.size() != s.dimension()) {
    throw Error(Errc::kDimensionMismatch, "expected " + std::to_string(s.dimension()) +
                                              " features, got " + std::to_string(x.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) {
    out[c] = s.constant[c] ? 0.0 : (x[c] - s.means[c]) / s.stds[c];
  }
  return out;
}

Matrix apply_standardizer(const Standardizer& s, const Matrix& x) {
  if (x.cols() != s.dimension()) {
    throw Error(Errc::kDimensionMismatch, "expected " + std::to_string(s.dimension()) +
                                              " features, got " + std::to_string(x.cols()));
  }
  Matrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto src = x.row(r);
    auto dst = out.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) {
      dst[c] = s.constant[c] ? 0.0 : (src[c] - s.means[c]) / s.stds[c];
    }
  }
  return out;
}

double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma) {
  if (x.size() != y.size()) throw Error(Errc::kDimensionMismatch, "kernel arguments differ in length");
  check_gamma(gamma);
  return std::exp(-gamma * squared_distance(x, y));
}

double BinarySvmModel::decision_value(std::span<const double> x) const {
  if (x.size() != support_vectors.cols()) {
    throw Error(Errc::kDimensionMismatch, "query dimension differs from support vectors");
  }
  double f = bias;
  for (std::size_t i = 0; i < support_vectors.rows(); ++i) {
    f += dual_coef[i] * std::exp(-params.gamma * squared_distance(support_vectors.row(i), x));
  }
  return f;
}

SmoSolution solve_smo(const Matrix& kernel, std::span<const int> y, double c,
                      const SmoOptions& options) {
  if (kernel.rows() != kernel.cols()) throw Error(Errc::kDimensionMismatch, "kernel not square");
  DenseRows rows(kernel);
  return solve(rows, y, c, options);
}

BinarySvmModel train_binary_smo(const Matrix& x, std::span<const int> y,
                                const SvmHyperparams& params, const SmoOptions& options) {
  if (x.rows() < 2) throw Error(Errc::kTooFewRows, "need at least 2 training points");
  if (y.size() != x.rows()) throw Error(Errc::kDimensionMismatch, "label count differs from rows");
  check_gamma(params.gamma);
  CachedRbfRows rows(x, params.gamma, options.cache_bytes);
  SmoSolution sol = solve(rows, y, params.c, options);

  BinarySvmModel model;
  model.params = params;
  model.bias = sol.bias;
  model.iterations = sol.iterations;
  model.iteration_cap_reached = sol.iteration_cap_reached;
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (sol.alpha[i] > 0.0) {
      support.push_back(i);
      model.dual_coef.push_back(sol.alpha[i] * y[i]);
    }
  }
  model.support_vectors = x.select_rows(support);
  return model;
}

Matrix squared_distances(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(Errc::kDimensionMismatch, "row dimensions differ");
  Matrix d(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) d(i, j) = squared_distance(a.row(i), b.row(j));
  }
  return d;
}

Matrix squared_distances(const Matrix& a) {
  Matrix d(a.rows(), a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.rows(); ++j) {
      d(i, j) = d(j, i) = squared_distance(a.row(i), a.row(j));
    }
  }
  return d;
}

Matrix rbf_from_distances(const Matrix& sq_dist, double gamma) {
  check_gamma(gamma);
  Matrix k(sq_dist.rows(), sq_dist.cols());
  auto src = sq_dist.values();
  auto dst = k.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::exp(-gamma * src[i]);
  return k;
}

MulticlassSvmModel::MulticlassSvmModel(std::vector<std::string> classes, Standardizer standardizer,
                                       Matrix pool, std::vector<Member> members,
                                       SvmHyperparams params)
    : classes_(std::move(classes)),
      standardizer_(std::move(standardizer)),
      pool_(std::move(pool)),
      members_(std::move(members)),
      params_(params) {
  if (classes_.size() != members_.size()) {
    throw Error(Errc::kInvalidArgument, "one binary member per class required");
  }
  if (!pool_.empty() && pool_.cols() != standardizer_.dimension()) {
    throw Error(Errc::kDimensionMismatch, "support pool dimension differs from standardizer");
  }
}

BinarySvmModel MulticlassSvmModel::binary_model(std::size_t k) const {
  const Member& m = members_.at(k);
  BinarySvmModel b;
  std::vector<std::size_t> rows(m.support.begin(), m.support.end());
  b.support_vectors = pool_.select_rows(rows);
  b.dual_coef = m.dual_coef;
  b.bias = m.bias;
  b.params = params_;
  b.iteration_cap_reached = m.iteration_cap_reached;
  return b;
}

std::vector<double> MulticlassSvmModel::decision_values(std::span<const double> x) const {
  const auto z = apply_standardizer(standardizer_, x);
  std::vector<double> k(pool_.rows());
  for (std::size_t i = 0; i < pool_.rows(); ++i) {
    k[i] = std::exp(-params_.gamma * squared_distance(pool_.row(i), z));
  }
  std::vector<double> out(members_.size());
  for (std::size_t c = 0; c < members_.size(); ++c) {
    const Member& m = members_[c];
    double f = m.bias;
    for (std::size_t s = 0; s < m.support.size(); ++s) f += m.dual_coef[s] * k[m.support[s]];
    out[c] = f;
  }
  return out;
}

Matrix MulticlassSvmModel::decision_values(const Matrix& x) const {
  Matrix out(x.rows(), members_.size());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto v = decision_values(x.row(r));
    std::copy(v.begin(), v.end(), out.row(r).begin());
  }
  return out;
}

std::size_t argmax_class(std::span<const double> decision_values) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < decision_values.size(); ++k) {
    if (decision_values[k] > decision_values[best]) best = k;
  }
  return best;
}

std::string MulticlassSvmModel::predict(std::span<const double> x) const {
  return classes_[argmax_class(decision_values(x))];
}

std::vector<std::string> MulticlassSvmModel::predict(const Matrix& x) const {
  std::vector<std::string> out;
  out.reserve(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out.push_back(predict(x.row(r)));
  return out;
}

bool MulticlassSvmModel::any_iteration_cap_reached() const {
  return std::any_of(members_.begin(), members_.end(),
                     [](const Member& m) { return m.iteration_cap_reached; });
}

std::vector<std::string> sorted_classes(const std::vector<std::string>& labels) {
  std::vector<std::string> classes(labels);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

OvrSolution solve_ovr(const Matrix& kernel, const std::vector<std::string>& labels, double c,
                      const OvrOptions& options) {
  if (kernel.rows() != labels.size() || kernel.cols() != labels.size()) {
    throw Error(Errc::kDimensionMismatch, "kernel size differs from label count");
  }
  OvrSolution out;
  out.classes = sorted_classes(labels);
  if (out.classes.size() < 2) {
    throw Error(Errc::kTooFewClasses, "one-vs-rest needs at least 2 distinct labels");
  }
  const std::size_t n = labels.size();
  std::vector<int> y(n);
  for (const auto& cls : out.classes) {
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = labels[i] == cls ? 1 : -1;
      n_pos += y[i] > 0;
    }
    SmoOptions smo = options.smo;
    if (options.class_weighting) {
      smo.positive_weight = static_cast<double>(n) / (2.0 * static_cast<double>(n_pos));
      smo.negative_weight = static_cast<double>(n) / (2.0 * static_cast<double>(n - n_pos));
    }
    SmoSolution sol = solve_smo(kernel, y, c, smo);
    std::vector<double> coef(n);
    for (std::size_t i = 0; i < n; ++i) coef[i] = sol.alpha[i] * y[i];
    out.coef.push_back(std::move(coef));
    out.bias.push_back(sol.bias);
    out.iteration_cap_reached.push_back(sol.iteration_cap_reached ? 1 : 0);
  }
  return out;
}

Matrix ovr_decision_values(const OvrSolution& solution, const Matrix& cross_kernel) {
  const std::size_t n_classes = solution.classes.size();
  if (n_classes == 0 || cross_kernel.cols() != solution.coef.front().size()) {
    throw Error(Errc::kDimensionMismatch, "cross kernel width differs from training size");
  }
  Matrix out(cross_kernel.rows(), n_classes);
  for (std::size_t r = 0; r < cross_kernel.rows(); ++r) {
    auto k = cross_kernel.row(r);
    for (std::size_t c = 0; c < n_classes; ++c) {
      const auto& coef = solution.coef[c];
      double f = solution.bias[c];
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (coef[i] != 0.0) f += coef[i] * k[i];
      }
      out(r, c) = f;
    }
  }
  return out;
}

MulticlassSvmModel train_ovr_precomputed(const Matrix& standardized_x, const Matrix& kernel,
                                         const std::vector<std::string>& labels,
                                         const Standardizer& standardizer,
                                         const SvmHyperparams& params, const OvrOptions& options) {
  check_gamma(params.gamma);
  if (standardized_x.rows() != labels.size()) {
    throw Error(Errc::kDimensionMismatch, "row count differs from label count");
  }
  OvrSolution sol = solve_ovr(kernel, labels, params.c, options);

  // Pool only rows that are support vectors of some member.
  const std::size_t n = labels.size();
  std::vector<std::int64_t> pool_index(n, -1);
  std::vector<std::size_t> pool_rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& coef : sol.coef) {
      if (coef[i] != 0.0) {
        pool_index[i] = static_cast<std::int64_t>(pool_rows.size());
        pool_rows.push_back(i);
        break;
      }
    }
  }
  std::vector<MulticlassSvmModel::Member> members;
  for (std::size_t c = 0; c < sol.classes.size(); ++c) {
    MulticlassSvmModel::Member m;
    for (std::size_t i = 0; i < n; ++i) {
      if (sol.coef[c][i] != 0.0) {
        m.support.push_back(static_cast<std::uint32_t>(pool_index[i]));
        m.dual_coef.push_back(sol.coef[c][i]);
      }
    }
    m.bias = sol.bias[c];
    m.iteration_cap_reached = sol.iteration_cap_reached[c] != 0;
    members.push_back(std::move(m));
  }
  Matrix pool = standardized_x.select_rows(pool_rows);
  if (pool.empty()) pool = Matrix(0, standardized_x.cols());
  return MulticlassSvmModel(std::move(sol.classes), standardizer, std::move(pool),
                            std::move(members), params);
}

MulticlassSvmModel train_ovr(const Matrix& x, const std::vector<std::string>& labels,
                             const SvmHyperparams& params, const OvrOptions& options) {
  if (x.rows() != labels.size()) {
    throw Error(Errc::kDimensionMismatch, "row count differs from label count");
  }
  if (sorted_classes(labels).size() < 2) {
    throw Error(Errc::kTooFewClasses, "one-vs-rest needs at least 2 distinct labels");
  }
  check_gamma(params.gamma);
  Standardizer s = fit_standardizer(x);
  Matrix z = apply_standardizer(s, x);
  Matrix k = rbf_from_distances(squared_distances(z), params.gamma);
  return train_ovr_precomputed(z, k, labels, s, params, options);
}

}  // namespace eegid::svm
