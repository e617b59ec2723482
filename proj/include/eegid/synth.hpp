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
#include <random>
#include <string>
#include <vector>

#include "eegid/recording.hpp"

namespace eegid::synth {

// Deterministic across platforms: only raw mt19937_64 output is consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double normal();   // Box-Muller
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Synthetic subjects. Each subject owns a fixed mixing of a few narrow-band
// gamma oscillators into the channels, with per-channel phase offsets, so its
// cross-channel phase coupling is stable across epochs and distinct between
// subjects. Oscillator envelopes and phases drift slowly and white noise is
// added to every channel.
struct SynthOptions {
  std::size_t n_subjects = 12;
  std::vector<std::string> channels;  // empty: the 21-channel 10-20 set
  double sampling_rate_hz = 128.0;
  double duration_s = 60.0;
  std::size_t n_sources = 5;
  double noise_std = 2.0;
  double source_amplitude = 1.0;
  // Relative perturbation of the mixing for task-condition recordings.
  double task_jitter = 0.15;
  std::uint64_t seed = 1;
  std::string dataset_id = "synth";
};

std::string subject_name(std::size_t subject);  // "S001", ...

EegRecording synth_recording(const SynthOptions& options, std::size_t subject, Condition condition);

std::vector<EegRecording> synth_corpus(const SynthOptions& options,
                                       const std::vector<Condition>& conditions = {Condition::kResting});

// Writes one matrix file per recording and a manifest.json referencing them
// into `dir` (created if needed). Returns the manifest path.
std::string write_synth_dataset(const std::string& dir, const SynthOptions& options,
                                const std::vector<Condition>& conditions = {Condition::kResting});

}  // namespace eegid::synth
