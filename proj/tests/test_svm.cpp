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

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "eegid/error.hpp"
#include "eegid/svm.hpp"
#include "test_util.hpp"

using namespace eegid;
using namespace eegid::svm;

namespace {

struct Problem {
  Matrix x;
  std::vector<int> y;
};

// Two overlapping Gaussian clouds.
Problem random_binary(std::mt19937_64& rng, std::size_t n, std::size_t dim, double shift) {
  Problem p;
  p.x = Matrix(n, dim);
  std::normal_distribution<double> g;
  for (std::size_t i = 0; i < n; ++i) {
    p.y.push_back(i % 2 ? 1 : -1);
    for (std::size_t d = 0; d < dim; ++d) p.x(i, d) = g(rng) + (p.y.back() > 0 ? shift : 0.0);
  }
  return p;
}

Matrix rbf(const Matrix& x, double gamma) { return rbf_from_distances(squared_distances(x), gamma); }

double dual_objective(const Matrix& k, const std::vector<int>& y, const std::vector<double>& a) {
  double lin = 0, quad = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lin += a[i];
    for (std::size_t j = 0; j < a.size(); ++j) quad += a[i] * a[j] * y[i] * y[j] * k(i, j);
  }
  return lin - 0.5 * quad;
}

// Largest violation of the KKT conditions of the C-SVM dual.
double kkt_violation(const Matrix& k, const std::vector<int>& y, const SmoSolution& s, double c) {
  double worst = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double f = s.bias;
    for (std::size_t j = 0; j < y.size(); ++j) f += s.alpha[j] * y[j] * k(i, j);
    const double margin = y[i] * f;
    const double a = s.alpha[i];
    if (a <= 1e-12 * c) worst = std::max(worst, 1 - margin);
    else if (a >= c * (1 - 1e-12)) worst = std::max(worst, margin - 1);
    else worst = std::max(worst, std::abs(margin - 1));
  }
  return worst;
}

// Labelled clusters far apart in feature space.
void separable(std::mt19937_64& rng, std::size_t classes, std::size_t per, Matrix& x,
               std::vector<std::string>& labels) {
  const std::size_t dim = std::max<std::size_t>(classes, 3);
  x = Matrix(classes * per, dim);
  labels.clear();
  std::normal_distribution<double> g(0, 0.3);
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t k = 0; k < per; ++k) {
      const std::size_t r = c * per + k;
      for (std::size_t d = 0; d < dim; ++d) x(r, d) = g(rng) + (d == c ? 4.0 : 0.0);
      labels.push_back("c" + std::to_string(c));
    }
  }
}

}  // namespace

TEST_CASE("standardizer") {
  std::mt19937_64 rng(1);
  Matrix x(40, 5);
  for (std::size_t r = 0; r < 40; ++r) {
    for (std::size_t c = 0; c < 4; ++c) x(r, c) = std::normal_distribution<double>(c * 3.0, 1.0 + c)(rng);
    x(r, 4) = 7.0;
  }
  const auto s = fit_standardizer(x);
  const Matrix z = apply_standardizer(s, x);
  for (std::size_t c = 0; c < 5; ++c) {
    double mean = 0, var = 0;
    for (std::size_t r = 0; r < 40; ++r) mean += x(r, c);
    mean /= 40;
    for (std::size_t r = 0; r < 40; ++r) var += (x(r, c) - mean) * (x(r, c) - mean);
    const double sd = std::sqrt(var / 40);
    CHECK(s.means[c] == doctest::Approx(mean).epsilon(1e-14));
    CHECK(s.stds[c] >= 1e-12);
    double zm = 0, zv = 0;
    for (std::size_t r = 0; r < 40; ++r) zm += z(r, c);
    zm /= 40;
    for (std::size_t r = 0; r < 40; ++r) zv += (z(r, c) - zm) * (z(r, c) - zm);
    CHECK(std::abs(zm) < 1e-9);
    if (c < 4) {
      CHECK(s.stds[c] == doctest::Approx(sd).epsilon(1e-14));
      CHECK(std::abs(std::sqrt(zv / 40) - 1) < 1e-9);
    } else {
      CHECK(s.constant[c] == 1);
      CHECK(zv == 0.0);
    }
  }
  CHECK_THROWS_AS(fit_standardizer(Matrix(1, 3)), Error);
  CHECK_THROWS_AS(apply_standardizer(s, Matrix(2, 3)), Error);
}

TEST_CASE("rbf kernel") {
  const std::vector<double> a{1, 2}, b{2, 0};
  CHECK(rbf_kernel(a, b, 0.1) == doctest::Approx(std::exp(-0.5)));
  CHECK(rbf_kernel(a, a, 3.0) == 1.0);
  CHECK_THROWS_AS(rbf_kernel(a, std::vector<double>{1.0}, 1.0), Error);
  const Matrix x = Matrix::from_rows({{0, 0}, {1, 1}, {3, 0}});
  const Matrix d = squared_distances(x);
  CHECK(d(0, 1) == 2);
  CHECK(d(2, 1) == 5);
  CHECK(d(1, 1) == 0);
  CHECK(squared_distances(x, x) == d);
}

TEST_CASE("SMO solutions satisfy KKT on random binary problems") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_binary(rng, 20 + t % 30, 3, 1.0);
    const double c = std::array{0.1, 1.0, 10.0, 100.0}[t % 4];
    const double gamma = std::array{1.0, 0.1, 0.5}[t % 3];
    const Matrix k = rbf(p.x, gamma);
    const auto s = solve_smo(k, p.y, c);
    CHECK_FALSE(s.iteration_cap_reached);
    double balance = 0;
    for (std::size_t i = 0; i < s.alpha.size(); ++i) {
      CHECK(s.alpha[i] >= 0);
      CHECK(s.alpha[i] <= c);
      balance += s.alpha[i] * p.y[i];
    }
    CHECK(std::abs(balance) < 1e-6);
    CHECK(kkt_violation(k, p.y, s, c) <= 1e-3);
  }
}

TEST_CASE("SMO objective beats random feasible dual points") {
  std::mt19937_64 rng(3);
  const auto p = random_binary(rng, 30, 2, 0.8);
  const double c = 1.0;
  const Matrix k = rbf(p.x, 0.5);
  const auto s = solve_smo(k, p.y, c);
  const double best = dual_objective(k, p.y, s.alpha);
  std::uniform_real_distribution<double> u(0, c);
  double best_random = -1e300;
  std::vector<double> a(30);
  for (int t = 0; t < 100000; ++t) {
    double pos = 0, neg = 0;
    for (std::size_t i = 0; i < 30; ++i) {
      a[i] = u(rng);
      (p.y[i] > 0 ? pos : neg) += a[i];
    }
    // Shrink the heavier side so that sum(alpha * y) = 0.
    const double ratio = pos > neg ? neg / pos : pos / neg;
    for (std::size_t i = 0; i < 30; ++i) {
      if ((p.y[i] > 0) == (pos > neg)) a[i] *= ratio;
    }
    best_random = std::max(best_random, dual_objective(k, p.y, a));
  }
  CHECK(best >= best_random);
}

TEST_CASE("cached kernel rows reproduce the dense solver") {
  std::mt19937_64 rng(4);
  const auto p = random_binary(rng, 60, 4, 0.7);
  const SvmHyperparams hp{10.0, 0.2};
  const auto dense = solve_smo(rbf(p.x, hp.gamma), p.y, hp.c);
  SmoOptions tiny;
  tiny.cache_bytes = 1;  // two rows, constant eviction
  for (const auto& opt : {SmoOptions{}, tiny}) {
    const auto m = train_binary_smo(p.x, p.y, hp, opt);
    for (std::size_t i = 0; i < 60; ++i) {
      double want = dense.bias;
      for (std::size_t j = 0; j < 60; ++j) {
        want += dense.alpha[j] * p.y[j] * rbf_kernel(p.x.row(i), p.x.row(j), hp.gamma);
      }
      CHECK(m.decision_value(p.x.row(i)) == doctest::Approx(want).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(solve_smo(rbf(p.x, 1.0), std::vector<int>(60, 1), 1.0), Error);
}

TEST_CASE("duplicating a non-support point leaves the decision unchanged") {
  std::mt19937_64 rng(5);
  const auto p = random_binary(rng, 40, 2, 3.0);
  const SvmHyperparams hp{1.0, 0.5};
  const auto s = solve_smo(rbf(p.x, hp.gamma), p.y, hp.c);
  std::size_t idle = 40;
  for (std::size_t i = 0; i < 40; ++i) {
    if (s.alpha[i] == 0.0) idle = i;
  }
  REQUIRE(idle < 40);
  const auto base = train_binary_smo(p.x, p.y, hp);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < 40; ++i) rows.emplace_back(p.x.row(i).begin(), p.x.row(i).end());
  rows.push_back(rows[idle]);
  auto y = p.y;
  y.push_back(p.y[idle]);
  const auto dup = train_binary_smo(Matrix::from_rows(rows), y, hp);
  const auto probe = random_binary(rng, 25, 2, 1.5);
  for (std::size_t i = 0; i < 25; ++i) {
    CHECK(std::abs(dup.decision_value(probe.x.row(i)) - base.decision_value(probe.x.row(i))) < 1e-6);
  }
}

TEST_CASE("argmax tie-break and prediction consistency") {
  CHECK(argmax_class(std::vector<double>{-0.2, 0.7, 0.7}) == 1);
  CHECK(argmax_class(std::vector<double>{0.1, -1, 0.3}) == 2);
  std::mt19937_64 rng(6);
  Matrix x;
  std::vector<std::string> labels;
  separable(rng, 5, 12, x, labels);
  const auto model = train_ovr(x, labels, {1.0, 0.1});
  CHECK(model.classes() == sorted_classes(labels));
  CHECK(model.members().size() == 5);
  const auto batch = model.predict(x);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    CHECK(batch[r] == model.predict(x.row(r)));
    CHECK(batch[r] == labels[r]);
  }
  const Matrix dv = model.decision_values(x);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto single = model.decision_values(x.row(r));
    for (std::size_t k = 0; k < 5; ++k) CHECK(dv(r, k) == single[k]);
    const auto bin = model.binary_model(2).decision_value(apply_standardizer(model.standardizer(), x.row(r)));
    CHECK(bin == doctest::Approx(single[2]).epsilon(1e-12));
  }
}

TEST_CASE("separable multiclass problems are learned exactly") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 5; ++t) {
    Matrix x, probe;
    std::vector<std::string> labels, probe_labels;
    separable(rng, 4 + t * 3, 10, x, labels);
    separable(rng, 4 + t * 3, 5, probe, probe_labels);
    for (double gamma : {0.1, 0.01}) {
      const auto model = train_ovr(x, labels, {10.0, gamma});
      CHECK(model.predict(probe) == probe_labels);
    }
  }
}

TEST_CASE("presentation order does not change predictions") {
  std::mt19937_64 rng(8);
  Matrix x, probe;
  std::vector<std::string> labels, probe_labels;
  separable(rng, 6, 8, x, labels);
  separable(rng, 6, 4, probe, probe_labels);
  std::vector<std::size_t> perm(x.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> plabels;
  for (auto i : perm) plabels.push_back(labels[i]);
  const auto a = train_ovr(x, labels, {1.0, 0.1});
  const auto b = train_ovr(x.select_rows(perm), plabels, {1.0, 0.1});
  CHECK(a.predict(probe) == b.predict(probe));
  const Matrix da = a.decision_values(probe), db = b.decision_values(probe);
  for (std::size_t i = 0; i < da.values().size(); ++i) CHECK(std::abs(da.values()[i] - db.values()[i]) < 1e-2);
  CHECK(train_ovr(x, labels, {1.0, 0.1}) == a);
}

TEST_CASE("precomputed and direct training agree") {
  std::mt19937_64 rng(9);
  Matrix x;
  std::vector<std::string> labels;
  separable(rng, 4, 9, x, labels);
  const SvmHyperparams hp{1.0, 0.05};
  const auto direct = train_ovr(x, labels, hp);
  const auto st = fit_standardizer(x);
  const Matrix z = apply_standardizer(st, x);
  const auto pre = train_ovr_precomputed(z, rbf(z, hp.gamma), labels, st, hp);
  const auto sol = solve_ovr(rbf(z, hp.gamma), labels, hp.c);
  const Matrix dv = ovr_decision_values(sol, rbf_from_distances(squared_distances(z, z), hp.gamma));
  const Matrix d1 = direct.decision_values(x), d2 = pre.decision_values(x);
  for (std::size_t i = 0; i < d1.values().size(); ++i) {
    CHECK(d1.values()[i] == doctest::Approx(d2.values()[i]).epsilon(1e-9));
    CHECK(dv.values()[i] == doctest::Approx(d2.values()[i]).epsilon(1e-9));
  }
  CHECK_THROWS_AS(train_ovr(x, std::vector<std::string>(x.rows(), "one"), hp), Error);
}

TEST_CASE("class weighting raises the positive box") {
  std::mt19937_64 rng(10);
  Matrix x;
  std::vector<std::string> labels;
  separable(rng, 6, 5, x, labels);
  OvrOptions weighted;
  weighted.class_weighting = true;
  const auto st = fit_standardizer(x);
  const Matrix k = rbf(apply_standardizer(st, x), 0.1);
  const auto plain = solve_ovr(k, labels, 0.1);
  const auto w = solve_ovr(k, labels, 0.1, weighted);
  // Inverse frequency weighting: positives get n/(2 n_pos) = 3, negatives 0.6.
  double max_plain = 0, max_w = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    max_plain = std::max(max_plain, std::abs(plain.coef[0][i]));
    max_w = std::max(max_w, std::abs(w.coef[0][i]));
  }
  CHECK(max_plain <= 0.1 + 1e-12);
  CHECK(max_w > 0.1);
  CHECK(max_w <= 0.3 + 1e-12);
}

TEST_CASE("model container round trip") {
  std::mt19937_64 rng(11);
  Matrix x;
  std::vector<std::string> labels;
  separable(rng, 3, 7, x, labels);
  const auto model = train_ovr(x, labels, {10.0, 0.1});
  std::stringstream s;
  save_model(s, model);
  const std::string bytes = s.str();
  CHECK(bytes.substr(0, 8) == "EEGIDSVM");
  std::istringstream in(bytes);
  const auto back = load_model(in);
  CHECK(back == model);
  CHECK(back.decision_values(x) == model.decision_values(x));
  for (std::size_t cut : {4ul, 20ul, bytes.size() / 2, bytes.size() - 1}) {
    std::istringstream trunc(bytes.substr(0, cut));
    try {
      load_model(trunc);
      FAIL("truncated model accepted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::kMalformedModel);
    }
  }
}
