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

#include "eegid/dsp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "eegid/error.hpp"

namespace eegid::dsp {

namespace {

constexpr double kPi = std::numbers::pi;

struct BandRow {
  Band band;
  const char* name;
  double low, high;
};

constexpr std::array<BandRow, 7> kBands = {{
    {Band::kDelta, "delta", 0.5, 4.0},
    {Band::kTheta, "theta", 4.0, 8.0},
    {Band::kAlpha, "alpha", 8.0, 12.0},
    {Band::kBeta1, "beta1", 12.0, 20.0},
    {Band::kBeta2, "beta2", 20.0, 30.0},
    {Band::kGamma, "gamma", 30.0, 45.0},
    {Band::kBroadband, "broadband", 0.5, 45.0},
}};

constexpr std::array<Band, 6> kAnalysisBands = {Band::kDelta, Band::kTheta, Band::kAlpha,
                                                Band::kBeta1, Band::kBeta2, Band::kGamma};

// Steady-state DF2T state of each section for a constant input of 1.
std::vector<std::array<double, 2>> step_states(const IirFilter& f) {
  std::vector<std::array<double, 2>> zi;
  zi.reserve(f.sections.size());
  double level = 1.0;
  for (const auto& s : f.sections) {
    const double gain = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    const double z2 = (s.b2 - s.a2 * gain) * level;
    const double z1 = (s.b1 + s.b2 - (s.a1 + s.a2) * gain) * level;
    zi.push_back({z1, z2});
    level *= gain;
  }
  return zi;
}

// In-place cascade pass with states initialized to `scale * zi`.
void run_cascade(const IirFilter& f, const std::vector<std::array<double, 2>>* zi,
                 std::vector<double>& x) {
  const double scale = x.empty() ? 0.0 : x.front();
  for (std::size_t k = 0; k < f.sections.size(); ++k) {
    const auto& s = f.sections[k];
    double z1 = zi ? (*zi)[k][0] * scale : 0.0;
    double z2 = zi ? (*zi)[k][1] * scale : 0.0;
    for (double& v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
}

void check_stable(const IirFilter& f) {
  for (double m : pole_magnitudes(f)) {
    if (!(m < 1.0 - 1e-9)) {
      throw Error(Errc::kUnstableDesign, "pole magnitude " + std::to_string(m) + " not inside unit circle");
    }
  }
}

}  // namespace

BandSpec band_spec(Band band) {
  for (const auto& row : kBands) {
    if (row.band == band) return {row.band, row.low, row.high};
  }
  throw Error(Errc::kInvalidBand, "unknown band");
}

const char* band_name(Band band) {
  for (const auto& row : kBands) {
    if (row.band == band) return row.name;
  }
  return "?";
}

std::optional<Band> parse_band(std::string_view name) {
  for (const auto& row : kBands) {
    if (name == row.name) return row.band;
  }
  return std::nullopt;
}

std::span<const Band> analysis_bands() { return kAnalysisBands; }

std::complex<double> frequency_response(const IirFilter& f, double freq_hz) {
  const double w = 2.0 * kPi * freq_hz / f.fs_hz;
  const std::complex<double> z1 = std::polar(1.0, -w);
  const std::complex<double> z2 = z1 * z1;
  std::complex<double> h = 1.0;
  for (const auto& s : f.sections) {
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  }
  return h;
}

std::vector<double> pole_magnitudes(const IirFilter& f) {
  std::vector<double> out;
  for (const auto& s : f.sections) {
    // Roots of z^2 + a1 z + a2.
    const std::complex<double> disc = std::sqrt(std::complex<double>(s.a1 * s.a1 - 4.0 * s.a2));
    out.push_back(std::abs((-s.a1 + disc) / 2.0));
    out.push_back(std::abs((-s.a1 - disc) / 2.0));
  }
  return out;
}

std::string describe(const IirFilter& f) {
  std::ostringstream os;
  os.precision(17);
  const char* type = f.type == FilterType::kBandpass ? "bandpass"
                     : f.type == FilterType::kNotch  ? "notch"
                                                     : "custom";
  os << "type " << type << "\norder " << f.effective_order() << "\nfs_hz " << f.fs_hz
     << "\nedges_hz " << f.low_hz << ' ' << f.high_hz << "\nsections " << f.sections.size()
     << '\n';
  for (const auto& s : f.sections) {
    os << s.b0 << ' ' << s.b1 << ' ' << s.b2 << ' ' << s.a1 << ' ' << s.a2 << '\n';
  }
  return os.str();
}

IirFilter design_butterworth_bandpass(const BandSpec& band, double fs_hz, int order) {
  if (!(fs_hz > 0.0) || !(band.low_hz > 0.0) || !(band.low_hz < band.high_hz) ||
      !(band.high_hz < fs_hz / 2.0)) {
    throw Error(Errc::kInvalidBand, "band [" + std::to_string(band.low_hz) + ", " +
                                        std::to_string(band.high_hz) + "] Hz invalid at fs " +
                                        std::to_string(fs_hz) + " Hz");
  }
  if (order < 2 || order > 8 || order % 2 != 0) {
    throw Error(Errc::kInvalidBand, "band-pass order must be even in [2, 8]");
  }
  const int n = order / 2;
  // Pre-warped analog edges for the bilinear transform s = (z - 1) / (z + 1).
  const double w1 = std::tan(kPi * band.low_hz / fs_hz);
  const double w2 = std::tan(kPi * band.high_hz / fs_hz);
  const double bw = w2 - w1;
  const double w0sq = w1 * w2;
  const double centre = 2.0 * std::atan(std::sqrt(w0sq));  // rad/sample

  auto to_z = [](std::complex<double> s) { return (1.0 + s) / (1.0 - s); };

  IirFilter f;
  f.type = FilterType::kBandpass;
  f.low_hz = band.low_hz;
  f.high_hz = band.high_hz;
  f.fs_hz = fs_hz;
  f.order = order;

  auto add_section = [&](double a1, double a2) {
    Biquad s{1.0, 0.0, -1.0, a1, a2};
    const std::complex<double> e1 = std::polar(1.0, -centre);
    const std::complex<double> e2 = e1 * e1;
    const double mag = std::abs((1.0 - e2) / (1.0 + a1 * e1 + a2 * e2));
    if (!(mag > 0.0) || !std::isfinite(mag)) {
      throw Error(Errc::kUnstableDesign, "degenerate section gain");
    }
    s.b0 /= mag;
    s.b2 /= mag;
    f.sections.push_back(s);
  };

  for (int k = 0; k < n; ++k) {
    const std::complex<double> p = std::polar(1.0, kPi * (2.0 * k + n + 1) / (2.0 * n));
    if (p.imag() < -1e-12) continue;  // handled through its conjugate
    const std::complex<double> pb = p * bw;
    const std::complex<double> root = std::sqrt(pb * pb - 4.0 * w0sq);
    const std::complex<double> s1 = (pb + root) / 2.0;
    const std::complex<double> s2 = (pb - root) / 2.0;
    if (std::abs(p.imag()) <= 1e-12) {
      // Real prototype pole: its two band-pass poles form one section.
      const std::complex<double> z1 = to_z(s1), z2 = to_z(s2);
      add_section(-(z1 + z2).real(), (z1 * z2).real());
    } else {
      for (auto s : {s1, s2}) {
        const std::complex<double> z = to_z(s);
        add_section(-2.0 * z.real(), std::norm(z));
      }
    }
  }
  check_stable(f);
  return f;
}

IirFilter design_notch(double f0_hz, double fs_hz, double q) {
  if (!(fs_hz > 0.0) || !(f0_hz > 0.0) || !(f0_hz < fs_hz / 2.0)) {
    throw Error(Errc::kFrequencyOutOfRange, "notch at " + std::to_string(f0_hz) +
                                                " Hz outside (0, " + std::to_string(fs_hz / 2.0) +
                                                ") Hz");
  }
  if (!(q > 0.0)) throw Error(Errc::kInvalidArgument, "notch quality factor must be positive");
  const double w0 = 2.0 * kPi * f0_hz / fs_hz;
  const double bw = w0 / q;
  const double gain = 1.0 / (1.0 + std::tan(bw / 2.0));
  const double c = std::cos(w0);
  IirFilter f;
  f.type = FilterType::kNotch;
  f.low_hz = f.high_hz = f0_hz;
  f.fs_hz = fs_hz;
  f.order = 2;
  f.sections.push_back({gain, -2.0 * gain * c, gain, -2.0 * gain * c, 2.0 * gain - 1.0});
  check_stable(f);
  return f;
}

std::vector<double> lfilter(const IirFilter& f, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  run_cascade(f, nullptr, y);
  return y;
}

std::vector<double> filtfilt(const IirFilter& f, std::span<const double> x) {
  const std::size_t pad = 3 * static_cast<std::size_t>(f.effective_order());
  const std::size_t n = x.size();
  if (n <= pad) {
    throw Error(Errc::kSignalTooShort, "signal of " + std::to_string(n) +
                                           " samples, need more than " + std::to_string(pad));
  }
  std::vector<double> ext(n + 2 * pad);
  for (std::size_t i = 0; i < pad; ++i) {
    ext[i] = 2.0 * x[0] - x[pad - i];
    ext[pad + n + i] = 2.0 * x[n - 1] - x[n - 2 - i];
  }
  std::copy(x.begin(), x.end(), ext.begin() + static_cast<std::ptrdiff_t>(pad));

  const auto zi = step_states(f);
  auto forward = [&](std::vector<double>& v) { run_cascade(f, &zi, v); };
  auto reverse = [](std::vector<double>& v) { std::reverse(v.begin(), v.end()); };

  std::vector<double> fb = ext;  // forward, then backward
  forward(fb);
  reverse(fb);
  forward(fb);
  reverse(fb);

  std::vector<double> bf = std::move(ext);  // backward, then forward
  reverse(bf);
  forward(bf);
  reverse(bf);
  forward(bf);

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = 0.5 * (fb[pad + i] + bf[pad + i]);
  return y;
}

EegRecording filter_recording(const EegRecording& rec, const IirFilter& f) {
  EegRecording out = rec;
  for (std::size_t c = 0; c < rec.num_channels(); ++c) {
    auto y = filtfilt(f, rec.data.row(c));
    std::copy(y.begin(), y.end(), out.data.row(c).begin());
  }
  return out;
}

EegRecording notch(const EegRecording& rec, double f0_hz, double q) {
  return filter_recording(rec, design_notch(f0_hz, rec.sampling_rate_hz, q));
}

ResampleRatio resample_ratio(double from_hz, double to_hz, int max_factor) {
  if (!(from_hz > 0.0) || !(to_hz > 0.0) || !std::isfinite(from_hz) || !std::isfinite(to_hz)) {
    throw Error(Errc::kInvalidArgument, "sampling rates must be positive");
  }
  const double r = to_hz / from_hz;
  for (int down = 1; down <= max_factor; ++down) {
    const double up = r * down;
    const double rounded = std::round(up);
    if (rounded >= 1.0 && rounded <= max_factor && std::abs(up - rounded) <= 1e-9 * rounded) {
      return {static_cast<int>(rounded), down};
    }
  }
  throw Error(Errc::kIrrationalRatio, std::to_string(from_hz) + " Hz -> " +
                                          std::to_string(to_hz) + " Hz has no ratio p/q with p, q <= " +
                                          std::to_string(max_factor));
}

std::vector<double> resample(std::span<const double> x, ResampleRatio ratio) {
  const std::size_t up = static_cast<std::size_t>(ratio.up);
  const std::size_t down = static_cast<std::size_t>(ratio.down);
  if (up == 0 || down == 0) throw Error(Errc::kInvalidArgument, "zero resampling factor");
  const std::size_t n = x.size();
  if (n == 0) return {};
  if (up == down) return {x.begin(), x.end()};

  constexpr std::size_t kZeroCrossings = 16;
  constexpr double kKaiserBeta = 8.0;
  const std::size_t m = std::max(up, down);
  const std::size_t half = kZeroCrossings * m;
  const std::size_t taps = 2 * half + 1;
  const double cutoff = 0.5 / static_cast<double>(m);  // cycles per upsampled sample
  const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);

  std::vector<double> h(taps);
  for (std::size_t k = 0; k < taps; ++k) {
    const double t = static_cast<double>(k) - static_cast<double>(half);
    const double arg = 2.0 * cutoff * t;
    const double sinc = t == 0.0 ? 1.0 : std::sin(kPi * arg) / (kPi * arg);
    const double ratio_t = t / static_cast<double>(half);
    const double window = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - ratio_t * ratio_t))) / i0_beta;
    h[k] = sinc * window;
  }
  std::vector<double> phase_sum(up, 0.0);
  for (std::size_t k = 0; k < taps; ++k) phase_sum[k % up] += h[k];

  // Odd reflection about the end samples keeps constants and linear trends intact.
  auto sample = [&](std::ptrdiff_t i) {
    const auto last = static_cast<std::ptrdiff_t>(n) - 1;
    if (i < 0) {
      const std::ptrdiff_t j = std::min(-i, last);
      return 2.0 * x[0] - x[static_cast<std::size_t>(j)];
    }
    if (i > last) {
      const std::ptrdiff_t j = std::max<std::ptrdiff_t>(2 * last - i, 0);
      return 2.0 * x[static_cast<std::size_t>(last)] - x[static_cast<std::size_t>(j)];
    }
    return x[static_cast<std::size_t>(i)];
  };

  const std::size_t out_len = n * up / down;
  std::vector<double> y(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::size_t base = i * down + half;  // upsampled index + filter delay
    const std::size_t residue = base % up;
    double acc = 0.0;
    for (std::size_t k = residue; k < taps; k += up) {
      const auto src = (static_cast<std::ptrdiff_t>(base) - static_cast<std::ptrdiff_t>(k)) /
                       static_cast<std::ptrdiff_t>(up);
      acc += h[k] * sample(src);
    }
    y[i] = acc / phase_sum[residue];
  }
  return y;
}

EegRecording resample(const EegRecording& rec, double target_hz) {
  const ResampleRatio ratio = resample_ratio(rec.sampling_rate_hz, target_hz);
  EegRecording out;
  out.channel_names = rec.channel_names;
  out.subject_id = rec.subject_id;
  out.dataset_id = rec.dataset_id;
  out.condition = rec.condition;
  out.sampling_rate_hz = target_hz;
  const std::size_t len = rec.num_samples() * static_cast<std::size_t>(ratio.up) /
                          static_cast<std::size_t>(ratio.down);
  out.data = Matrix(rec.num_channels(), len);
  for (std::size_t c = 0; c < rec.num_channels(); ++c) {
    auto y = resample(rec.data.row(c), ratio);
    std::copy(y.begin(), y.end(), out.data.row(c).begin());
  }
  return out;
}

std::size_t epoch_samples(double epoch_length_s, double fs_hz) {
  const double v = epoch_length_s * fs_hz;
  const double rounded = std::round(v);
  if (!(epoch_length_s > 0.0) || rounded < 1.0 || std::abs(v - rounded) > 1e-9 * rounded) {
    throw Error(Errc::kInvalidArgument, "epoch length " + std::to_string(epoch_length_s) +
                                            " s is not a whole number of samples at " +
                                            std::to_string(fs_hz) + " Hz");
  }
  return static_cast<std::size_t>(rounded);
}

std::vector<Epoch> split_epochs(const EegRecording& rec, double epoch_length_s,
                                const BandSpec& band) {
  const std::size_t m = epoch_samples(epoch_length_s, rec.sampling_rate_hz);
  const std::size_t count = rec.num_samples() / m;
  if (count == 0) {
    throw Error(Errc::kRecordingTooShort, rec.class_label() + ": " +
                                              std::to_string(rec.num_samples()) +
                                              " samples shorter than one epoch of " +
                                              std::to_string(m));
  }
  std::vector<Epoch> epochs;
  epochs.reserve(count);
  for (std::size_t e = 0; e < count; ++e) {
    Epoch ep;
    ep.data = rec.data.slice_cols(e * m, m);
    ep.subject_id = rec.subject_id;
    ep.dataset_id = rec.dataset_id;
    ep.condition = rec.condition;
    ep.band = band;
    ep.epoch_index = e;
    epochs.push_back(std::move(ep));
  }
  return epochs;
}

}  // namespace eegid::dsp
