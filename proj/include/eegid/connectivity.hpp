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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eegid/dsp.hpp"
#include "eegid/matrix.hpp"

namespace eegid::fc {

enum class Metric { kCor, kPlv, kPli };

const char* metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

// Instantaneous phase, channels x samples, radians in (-pi, pi].
struct PhaseSeries {
  Matrix phases;
};

// Phase of the analytic signal of `x`. The transform runs on the next power
// of two >= x.size() with zero padding and is truncated back. A zero analytic
// sample has phase 0. Errors: kEpochTooShort when x.size() < 8.
std::vector<double> analytic_phase(std::span<const double> x);
PhaseSeries analytic_phase(const dsp::Epoch& epoch);

// Wraps a phase difference into (-pi, pi].
double wrap_phase(double radians);

// Pearson correlation with population standard deviations, clamped to
// [-1, 1]. Errors: kLengthMismatch, kDegenerateVariance, kInvalidArgument
// when fewer than 2 samples.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

// Phase locking value |mean(exp(j(phi_x - phi_y)))|. Errors: kLengthMismatch.
double plv(std::span<const double> phi_x, std::span<const double> phi_y);

// Phase lag index |mean(sgn(wrap(phi_x - phi_y)))| with sgn(0) = 0.
double pli(std::span<const double> phi_x, std::span<const double> phi_y);

struct Provenance {
  std::string subject_id;
  std::string dataset_id;
  Condition condition = Condition::kResting;
  std::size_t epoch_index = 0;
};

// Symmetric channel x channel coupling matrix with a zero diagonal.
struct ConnectivityMatrix {
  Metric metric = Metric::kPlv;
  Matrix values;
  dsp::BandSpec band;
  Provenance provenance;
};

// Every unordered channel pair of the epoch, mirrored. kDegenerateVariance
// from COR names the offending channel indices.
ConnectivityMatrix connectivity_matrix(const dsp::Epoch& epoch, Metric metric);

enum class FeatureKind { kFcUpperTriangle, kGraphMetric };

struct FeatureVector {
  std::vector<double> values;
  FeatureKind kind = FeatureKind::kFcUpperTriangle;
  std::size_t dimension() const { return values.size(); }
};

// Row-major scan of the strict upper triangle: (0,1), (0,2), ..., (n-2,n-1).
FeatureVector vectorize_upper(const ConnectivityMatrix& c);

// Position of pair (m, n), m < n, in the vectorized upper triangle.
std::size_t upper_index(std::size_t num_channels, std::size_t m, std::size_t n);
// Inverse of upper_index, listing every (m, n) in feature order.
std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t num_channels);

}  // namespace eegid::fc
