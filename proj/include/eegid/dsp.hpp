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

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eegid/recording.hpp"

namespace eegid::dsp {

enum class Band { kDelta, kTheta, kAlpha, kBeta1, kBeta2, kGamma, kBroadband };

struct BandSpec {
  Band band = Band::kBroadband;
  double low_hz = 0.5;
  double high_hz = 45.0;
};

// Frequency ranges used for per-band connectivity.
BandSpec band_spec(Band band);
const char* band_name(Band band);
std::optional<Band> parse_band(std::string_view name);
// The six analysis bands in ascending frequency order (broadband excluded).
std::span<const Band> analysis_bands();

// One second-order section, a0 normalized to 1:
//   H(z) = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)
struct Biquad {
  double b0 = 1, b1 = 0, b2 = 0;
  double a1 = 0, a2 = 0;
};

enum class FilterType { kBandpass, kNotch, kCustom };

struct IirFilter {
  std::vector<Biquad> sections;
  FilterType type = FilterType::kCustom;
  double low_hz = 0, high_hz = 0;  // band edges, or notch centre in both
  double fs_hz = 0;
  int order = 0;  // number of poles

  int effective_order() const {
    return order > 0 ? order : static_cast<int>(2 * sections.size());
  }
};

// Complex response of the cascade at `freq_hz`.
std::complex<double> frequency_response(const IirFilter& f, double freq_hz);
// Pole magnitudes of every section.
std::vector<double> pole_magnitudes(const IirFilter& f);
// Human-readable dump of the design and its coefficients.
std::string describe(const IirFilter& f);

// Butterworth band-pass of `order` poles (even, 2..8), designed from the
// analog low-pass prototype of order/2 through the low-pass to band-pass
// transform and a pre-warped bilinear transform, realized as order/2
// second-order sections with unit gain at the band centre.
// Errors: kInvalidBand, kUnstableDesign.
IirFilter design_butterworth_bandpass(const BandSpec& band, double fs_hz, int order = 4);

// Second-order IIR notch at f0 with quality factor q.
// Errors: kFrequencyOutOfRange, kInvalidArgument.
IirFilter design_notch(double f0_hz, double fs_hz, double q = 30.0);

// Single forward pass through the cascade, starting from rest.
std::vector<double> lfilter(const IirFilter& f, std::span<const double> x);

// Zero-phase filtering. The signal is extended at both ends by odd-symmetric
// reflection of length 3 * order, run forward-backward and backward-forward
// from steady-state initial conditions, and the two results averaged. The
// magnitude response is |H|^2 and the output commutes exactly with time
// reversal. Errors: kSignalTooShort when x.size() <= 3 * order.
std::vector<double> filtfilt(const IirFilter& f, std::span<const double> x);

// Applies filtfilt to every channel.
EegRecording filter_recording(const EegRecording& rec, const IirFilter& f);

// Notch filter at f0 applied zero-phase to every channel.
EegRecording notch(const EegRecording& rec, double f0_hz, double q = 30.0);

// Reduced up/down factors for converting from_hz to to_hz, with both factors
// at most max_factor. Errors: kIrrationalRatio.
struct ResampleRatio {
  int up = 1;
  int down = 1;
};
ResampleRatio resample_ratio(double from_hz, double to_hz, int max_factor = 1024);

// Polyphase rational resampling of one channel: upsample by `up`, Kaiser
// windowed-sinc low-pass at the lower Nyquist, downsample by `down`. The
// filter delay is compensated and each polyphase branch is normalized to unit
// DC gain. Output length is floor(n * up / down).
std::vector<double> resample(std::span<const double> x, ResampleRatio ratio);

EegRecording resample(const EegRecording& rec, double target_hz);

struct Epoch {
  Matrix data;  // channels x samples
  std::string subject_id;
  std::string dataset_id;
  Condition condition = Condition::kResting;
  BandSpec band;
  std::size_t epoch_index = 0;

  std::string class_label() const { return dataset_id + "/" + subject_id; }
};

// Number of samples per epoch; throws kInvalidArgument unless
// epoch_length_s * fs is a positive integer.
std::size_t epoch_samples(double epoch_length_s, double fs_hz);

// floor(n / (L * fs)) consecutive non-overlapping epochs; the trailing
// remainder is dropped. Errors: kRecordingTooShort.
std::vector<Epoch> split_epochs(const EegRecording& rec, double epoch_length_s,
                                const BandSpec& band = band_spec(Band::kBroadband));

}  // namespace eegid::dsp
