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

#include "eegid/connectivity.hpp"
#include "eegid/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace eegid;
using namespace eegid::fc;
using testutil::kPi;

namespace {

dsp::Epoch random_epoch(std::mt19937_64& rng, std::size_t channels, std::size_t samples) {
  dsp::Epoch e;
  e.data = Matrix(channels, samples);
  for (auto& v : e.data.values()) v = std::normal_distribution<double>()(rng);
  e.subject_id = "S1";
  e.dataset_id = "d";
  return e;
}

std::vector<double> row(const Matrix& m, std::size_t r) { return {m.row(r).begin(), m.row(r).end()}; }

double circ_diff(double a, double b) { return std::abs(std::remainder(a - b, 2 * kPi)); }

}  // namespace

TEST_CASE("analytic phase of a cosine advances linearly") {
  const auto x = testutil::sine(512, 10, 128, 1.0, kPi / 2);
  const auto phase = analytic_phase(x);
  // Unwrap and fit a line over the central 90%.
  std::vector<double> u(phase.begin(), phase.end());
  for (std::size_t i = 1; i < u.size(); ++i) {
    while (u[i] - u[i - 1] > kPi) u[i] -= 2 * kPi;
    while (u[i] - u[i - 1] < -kPi) u[i] += 2 * kPi;
  }
  const std::size_t a = 26, b = 486;
  double st = 0, sp = 0, stt = 0, stp = 0;
  const double n = static_cast<double>(b - a);
  for (std::size_t i = a; i < b; ++i) {
    const double t = i / 128.0;
    st += t, sp += u[i], stt += t * t, stp += t * u[i];
  }
  const double slope = (n * stp - st * sp) / (n * stt - st * st);
  CHECK(slope == doctest::Approx(2 * kPi * 10).epsilon(0.01));
}

TEST_CASE("sine and cosine are in quadrature") {
  const auto c = analytic_phase(testutil::sine(512, 10, 128, 1.0, kPi / 2));
  const auto s = analytic_phase(testutil::sine(512, 10, 128));
  for (std::size_t i = 26; i < 486; ++i) CHECK(circ_diff(c[i] - s[i], kPi / 2) < 0.02);
}

TEST_CASE("analytic phase matches a DFT oracle") {
  std::mt19937_64 rng(6);
  for (std::size_t n : {8u, 20u, 64u, 100u}) {
    const auto x = testutil::normal_vec(rng, n);
    const auto got = analytic_phase(x);
    const auto want = oracle::dft_phase(x);
    for (std::size_t i = 0; i < n; ++i) CHECK(circ_diff(got[i], want[i]) < 1e-9);
  }
}

TEST_CASE("analytic phase edge cases") {
  const auto zero = analytic_phase(std::vector<double>(16, 0.0));
  for (double p : zero) CHECK(p == 0.0);
  CHECK_THROWS_AS(analytic_phase(std::vector<double>(7, 1.0)), Error);
  const auto p = analytic_phase(testutil::sine(64, 5, 64));
  for (double v : p) {
    CHECK(v > -kPi);
    CHECK(v <= kPi);
  }
}

TEST_CASE("pearson correlation") {
  CHECK(pearson_correlation(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 2, 3, 4}) == 1.0);
  CHECK(pearson_correlation(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) == -1.0);
  CHECK_THROWS_AS(pearson_correlation(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), Error);
  CHECK_THROWS_AS(pearson_correlation(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), Error);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const auto x = testutil::normal_vec(rng, 100), y = testutil::normal_vec(rng, 100);
    CHECK(std::abs(pearson_correlation(x, y) - oracle::two_pass_correlation(x, y)) < 1e-12);
    // Affine invariance up to the sign of the slope.
    std::vector<double> ax(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ax[i] = -2.5 * x[i] + 7;
    CHECK(pearson_correlation(ax, y) == doctest::Approx(-pearson_correlation(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("plv and pli hand examples") {
  std::mt19937_64 rng(3);
  const auto phi = testutil::uniform_vec(rng, 50, -kPi, kPi);
  CHECK(plv(phi, phi) == doctest::Approx(1.0));
  std::vector<double> shifted(phi);
  for (auto& v : shifted) v += 0.3;
  CHECK(plv(shifted, phi) == doctest::Approx(1.0));
  CHECK(pli(shifted, phi) == 1.0);
  const std::vector<double> zero(4, 0.0);
  CHECK(pli(std::vector<double>{0.5, -0.5, 1.2, -1.2}, zero) == 0.0);
  CHECK(pli(std::vector<double>{0.1, 0.2, -0.1, 0, 0}, std::vector<double>(5, 0.0)) == doctest::Approx(0.2));
  CHECK_THROWS_AS(plv(phi, std::vector<double>(3, 0.0)), Error);
  CHECK_THROWS_AS(pli(phi, std::vector<double>(3, 0.0)), Error);
  CHECK(wrap_phase(kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(3 * kPi / 2) == doctest::Approx(-kPi / 2));
}

TEST_CASE("plv of independent phases is small") {
  std::mt19937_64 rng(44);
  int below = 0;
  std::vector<double> zero(10000, 0.0);
  for (int t = 0; t < 1000; ++t) {
    if (plv(testutil::uniform_vec(rng, 10000, -kPi, kPi), zero) < 0.05) ++below;
  }
  CHECK(below >= 990);
}

TEST_CASE("phase metrics against oracles, scaling and 2pi shifts") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(1, 200);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(len(rng));
    auto a = testutil::uniform_vec(rng, n, -kPi, kPi), b = testutil::uniform_vec(rng, n, -kPi, kPi);
    const double p = plv(a, b), q = pli(a, b);
    CHECK(std::abs(p - oracle::plv(a, b)) < 1e-12);
    CHECK(std::abs(q - oracle::pli(a, b)) < 1e-12);
    CHECK(p >= 0);
    CHECK(p <= 1 + 1e-12);
    CHECK(q <= 1);
    // |mean sin(dphi)| is the projection bound that holds for every input.
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::sin(a[i] - b[i]);
    CHECK(std::abs(s) / n <= p + 1e-12);
    auto a2 = a;
    a2[rng() % n] += 2 * kPi;
    CHECK(plv(a2, b) == doctest::Approx(p).epsilon(1e-12));
    CHECK(pli(a2, b) == q);
  }
}

TEST_CASE("pli can exceed plv") {
  // Both differences lead, but they point in nearly opposite directions.
  const std::vector<double> d{0.1, 3.0}, zero{0.0, 0.0};
  CHECK(pli(d, zero) == 1.0);
  CHECK(plv(d, zero) < 0.2);
}

TEST_CASE("connectivity matrices equal brute-force loops") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 100; ++t) {
    const auto ep = random_epoch(rng, 4, 64);
    const auto cor = connectivity_matrix(ep, Metric::kCor);
    const auto pv = connectivity_matrix(ep, Metric::kPlv);
    const auto pl = connectivity_matrix(ep, Metric::kPli);
    std::vector<std::vector<double>> phase;
    for (std::size_t c = 0; c < 4; ++c) phase.push_back(oracle::dft_phase(row(ep.data, c)));
    for (std::size_t a = 0; a < 4; ++a) {
      CHECK(cor.values(a, a) == 0.0);
      CHECK(pv.values(a, a) == 0.0);
      for (std::size_t b = 0; b < 4; ++b) {
        if (a == b) continue;
        CHECK(cor.values(a, b) == cor.values(b, a));
        CHECK(std::abs(cor.values(a, b) - oracle::two_pass_correlation(row(ep.data, a), row(ep.data, b))) < 1e-12);
        CHECK(std::abs(pv.values(a, b) - oracle::plv(phase[a], phase[b])) < 1e-9);
        CHECK(std::abs(pl.values(a, b) - oracle::pli(phase[a], phase[b])) < 1e-9);
      }
    }
  }
}

TEST_CASE("connectivity is permutation equivariant and amplitude invariant") {
  std::mt19937_64 rng(16);
  const auto ep = random_epoch(rng, 6, 128);
  std::vector<std::size_t> perm(6);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  dsp::Epoch permuted = ep, scaled = ep;
  for (std::size_t c = 0; c < 6; ++c) {
    for (std::size_t k = 0; k < 128; ++k) {
      permuted.data(c, k) = ep.data(perm[c], k);
      scaled.data(c, k) = ep.data(c, k) * (0.5 + c);
    }
  }
  for (Metric m : {Metric::kCor, Metric::kPlv, Metric::kPli}) {
    const auto base = connectivity_matrix(ep, m).values;
    const auto p = connectivity_matrix(permuted, m).values;
    const auto s = connectivity_matrix(scaled, m).values;
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) {
        CHECK(p(a, b) == doctest::Approx(base(perm[a], perm[b])).epsilon(1e-12));
        CHECK(s(a, b) == doctest::Approx(base(a, b)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("identical channels lock and constant channels are reported") {
  std::mt19937_64 rng(17);
  auto ep = random_epoch(rng, 3, 64);
  for (std::size_t k = 0; k < 64; ++k) ep.data(1, k) = ep.data(0, k);
  CHECK(connectivity_matrix(ep, Metric::kPlv).values(0, 1) == doctest::Approx(1.0));
  for (std::size_t k = 0; k < 64; ++k) ep.data(2, k) = 1.0;
  try {
    connectivity_matrix(ep, Metric::kCor);
    FAIL("expected DegenerateVariance");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kDegenerateVariance);
    CHECK(e.detail().find('2') != std::string::npos);
  }
}

TEST_CASE("upper-triangle vectorization") {
  ConnectivityMatrix c;
  c.values = Matrix::from_rows({{0, 1, 2}, {1, 0, 3}, {2, 3, 0}});
  CHECK(vectorize_upper(c).values == std::vector<double>{1, 2, 3});
  CHECK(upper_pairs(21).size() == 210);
  CHECK(upper_pairs(56).size() == 1540);
  const auto pairs = upper_pairs(9);
  for (std::size_t k = 0; k < pairs.size(); ++k) CHECK(upper_index(9, pairs[k].first, pairs[k].second) == k);
  std::mt19937_64 rng(18);
  const auto big = connectivity_matrix(random_epoch(rng, 56, 64), Metric::kPlv);
  CHECK(vectorize_upper(big).dimension() == 1540);
}
