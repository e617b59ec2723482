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

#include "eegid/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "eegid/error.hpp"
#include "eegid/fft.hpp"

namespace eegid::fc {

namespace {

constexpr double kPi = std::numbers::pi;

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(Errc::kLengthMismatch, std::to_string(a) + " vs " + std::to_string(b) + " samples");
  }
}

}  // namespace

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::kCor: return "COR";
    case Metric::kPlv: return "PLV";
    case Metric::kPli: return "PLI";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "COR" || name == "cor") return Metric::kCor;
  if (name == "PLV" || name == "plv") return Metric::kPlv;
  if (name == "PLI" || name == "pli") return Metric::kPli;
  return std::nullopt;
}

double wrap_phase(double radians) {
  double d = std::remainder(radians, 2.0 * kPi);
  if (d <= -kPi) d += 2.0 * kPi;
  return d;
}

std::vector<double> analytic_phase(std::span<const double> x) {
  if (x.size() < 8) {
    throw Error(Errc::kEpochTooShort, std::to_string(x.size()) + " samples, need at least 8");
  }
  const std::size_t n = next_power_of_two(x.size());
  std::vector<std::complex<double>> spec(n);
  for (std::size_t i = 0; i < x.size(); ++i) spec[i] = x[i];
  fft_inplace(spec);
  // Keep DC and Nyquist, double positive frequencies, zero negative ones.
  for (std::size_t k = 1; k < n / 2; ++k) spec[k] *= 2.0;
  for (std::size_t k = n / 2 + 1; k < n; ++k) spec[k] = 0.0;
  fft_inplace(spec, /*inverse=*/true);

  std::vector<double> phase(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto z = spec[i];
    if (z.real() == 0.0 && z.imag() == 0.0) {
      phase[i] = 0.0;
      continue;
    }
    double p = std::atan2(z.imag(), z.real());
    if (p <= -kPi) p = kPi;
    phase[i] = p;
  }
  return phase;
}

PhaseSeries analytic_phase(const dsp::Epoch& epoch) {
  PhaseSeries out{Matrix(epoch.data.rows(), epoch.data.cols())};
  for (std::size_t c = 0; c < epoch.data.rows(); ++c) {
    auto p = analytic_phase(epoch.data.row(c));
    std::copy(p.begin(), p.end(), out.phases.row(c).begin());
  }
  return out;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  check_lengths(x.size(), y.size());
  const std::size_t m = x.size();
  if (m < 2) throw Error(Errc::kInvalidArgument, "correlation needs at least 2 samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0, syy = 0.0, ax = 0.0, ay = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double dx = x[k] - mx, dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
    ax = std::max(ax, std::abs(x[k]));
    ay = std::max(ay, std::abs(y[k]));
  }
  const double sdx = std::sqrt(sxx / static_cast<double>(m));
  const double sdy = std::sqrt(syy / static_cast<double>(m));
  // Spread below rounding noise of the values themselves counts as constant.
  if (!(sdx > 1e-12 * ax) || !(sdy > 1e-12 * ay)) {
    throw Error(Errc::kDegenerateVariance, "constant input");
  }
  const double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

double plv(std::span<const double> phi_x, std::span<const double> phi_y) {
  check_lengths(phi_x.size(), phi_y.size());
  if (phi_x.empty()) throw Error(Errc::kInvalidArgument, "empty phase series");
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < phi_x.size(); ++k) {
    const double d = phi_x[k] - phi_y[k];
    re += std::cos(d);
    im += std::sin(d);
  }
  const double m = static_cast<double>(phi_x.size());
  return std::min(1.0, std::hypot(re, im) / m);
}

double pli(std::span<const double> phi_x, std::span<const double> phi_y) {
  check_lengths(phi_x.size(), phi_y.size());
  if (phi_x.empty()) throw Error(Errc::kInvalidArgument, "empty phase series");
  long sum = 0;
  for (std::size_t k = 0; k < phi_x.size(); ++k) {
    const double d = wrap_phase(phi_x[k] - phi_y[k]);
    sum += (d > 0.0) - (d < 0.0);
  }
  return std::abs(static_cast<double>(sum)) / static_cast<double>(phi_x.size());
}

ConnectivityMatrix connectivity_matrix(const dsp::Epoch& epoch, Metric metric) {
  const std::size_t n = epoch.data.rows();
  ConnectivityMatrix out;
  out.metric = metric;
  out.values = Matrix(n, n, 0.0);
  out.band = epoch.band;
  out.provenance = {epoch.subject_id, epoch.dataset_id, epoch.condition, epoch.epoch_index};

  if (metric == Metric::kCor) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        double v = 0.0;
        try {
          v = pearson_correlation(epoch.data.row(a), epoch.data.row(b));
        } catch (const Error& e) {
          throw Error(e.code(), "channels " + std::to_string(a) + " and " + std::to_string(b) +
                                    " of " + epoch.class_label() + " epoch " +
                                    std::to_string(epoch.epoch_index) + ": " + e.detail());
        }
        out.values(a, b) = out.values(b, a) = v;
      }
    }
    return out;
  }

  const PhaseSeries ph = analytic_phase(epoch);
  if (metric == Metric::kPli) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        out.values(a, b) = out.values(b, a) = pli(ph.phases.row(a), ph.phases.row(b));
      }
    }
    return out;
  }

  // Unit phasors once per channel; e^{j(a-b)} = e^{ja} conj(e^{jb}).
  const std::size_t m = ph.phases.cols();
  Matrix re(n, m), im(n, m);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t k = 0; k < m; ++k) {
      re(a, k) = std::cos(ph.phases(a, k));
      im(a, k) = std::sin(ph.phases(a, k));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double sr = 0.0, si = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        sr += re(a, k) * re(b, k) + im(a, k) * im(b, k);
        si += im(a, k) * re(b, k) - re(a, k) * im(b, k);
      }
      out.values(a, b) = out.values(b, a) = std::min(1.0, std::hypot(sr, si) / static_cast<double>(m));
    }
  }
  return out;
}

FeatureVector vectorize_upper(const ConnectivityMatrix& c) {
  const std::size_t n = c.values.rows();
  FeatureVector fv;
  fv.kind = FeatureKind::kFcUpperTriangle;
  fv.values.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) fv.values.push_back(c.values(a, b));
  }
  return fv;
}

std::size_t upper_index(std::size_t num_channels, std::size_t m, std::size_t n) {
  if (!(m < n && n < num_channels)) throw Error(Errc::kInvalidArgument, "pair not in upper triangle");
  // Rows before m contribute (N-1) + (N-2) + ... + (N-m) entries.
  return m * (2 * num_channels - m - 1) / 2 + (n - m - 1);
}

std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t num_channels) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < num_channels; ++a) {
    for (std::size_t b = a + 1; b < num_channels; ++b) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace eegid::fc
