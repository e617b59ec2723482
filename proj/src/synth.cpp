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

#include "eegid/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "eegid/error.hpp"
#include "eegid/matrix_format.hpp"

namespace eegid::synth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct SubjectModel {
  Matrix gain;   // channels x sources
  Matrix phase;  // channels x sources
};

SubjectModel subject_model(const SynthOptions& o, std::size_t n_ch, std::size_t subject) {
  Rng rng(mix_seed(o.seed, subject));
  SubjectModel m{Matrix(n_ch, o.n_sources), Matrix(n_ch, o.n_sources)};
  for (std::size_t c = 0; c < n_ch; ++c) {
    for (std::size_t k = 0; k < o.n_sources; ++k) {
      const double u = rng.uniform();
      m.gain(c, k) = u * u;
      m.phase(c, k) = kTwoPi * rng.uniform() - std::numbers::pi;
    }
  }
  return m;
}

}  // namespace

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

std::string subject_name(std::size_t subject) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "S%03zu", subject + 1);
  return buf;
}

EegRecording synth_recording(const SynthOptions& o, std::size_t subject, Condition condition) {
  if (o.n_sources == 0 || !(o.sampling_rate_hz > 0.0) || !(o.duration_s > 0.0)) {
    throw Error(Errc::kInvalidArgument, "synthetic options need sources, rate and duration");
  }
  const std::vector<std::string> channels =
      o.channels.empty() ? ChannelSet::ten_twenty_21().names() : o.channels;
  const std::size_t n_ch = channels.size();
  const std::size_t n = static_cast<std::size_t>(std::llround(o.duration_s * o.sampling_rate_hz));
  const double fs = o.sampling_rate_hz;

  SubjectModel model = subject_model(o, n_ch, subject);
  Rng rng(mix_seed(mix_seed(o.seed, subject), 1000 + static_cast<std::uint64_t>(condition)));
  if (condition == Condition::kTask) {
    for (std::size_t c = 0; c < n_ch; ++c) {
      for (std::size_t k = 0; k < o.n_sources; ++k) {
        model.gain(c, k) = std::max(0.0, model.gain(c, k) * (1.0 + o.task_jitter * rng.normal()));
        model.phase(c, k) += o.task_jitter * rng.normal();
      }
    }
  }

  // Latent oscillators spread over 32-42 Hz with phase diffusion and a
  // slowly drifting log-envelope.
  Matrix src_re(o.n_sources, n), src_im(o.n_sources, n);
  for (std::size_t k = 0; k < o.n_sources; ++k) {
    const double f = o.n_sources == 1 ? 37.0 : 32.0 + 10.0 * k / (o.n_sources - 1);
    double phi = kTwoPi * rng.uniform();
    double log_env = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      phi += kTwoPi * f / fs + 0.05 * rng.normal();
      log_env = 0.995 * log_env + 0.03 * rng.normal();
      const double a = o.source_amplitude * std::exp(log_env);
      src_re(k, t) = a * std::cos(phi);
      src_im(k, t) = a * std::sin(phi);
    }
  }

  EegRecording rec;
  rec.channel_names = channels;
  rec.sampling_rate_hz = fs;
  rec.subject_id = subject_name(subject);
  rec.dataset_id = o.dataset_id;
  rec.condition = condition;
  rec.data = Matrix(n_ch, n);
  for (std::size_t c = 0; c < n_ch; ++c) {
    for (std::size_t k = 0; k < o.n_sources; ++k) {
      // Re(g e^{j theta} s_k(t))
      const double gr = model.gain(c, k) * std::cos(model.phase(c, k));
      const double gi = model.gain(c, k) * std::sin(model.phase(c, k));
      for (std::size_t t = 0; t < n; ++t) rec.data(c, t) += gr * src_re(k, t) - gi * src_im(k, t);
    }
    for (std::size_t t = 0; t < n; ++t) rec.data(c, t) += o.noise_std * rng.normal();
  }
  return rec;
}

std::vector<EegRecording> synth_corpus(const SynthOptions& options,
                                       const std::vector<Condition>& conditions) {
  std::vector<EegRecording> out;
  for (std::size_t s = 0; s < options.n_subjects; ++s) {
    for (Condition c : conditions) out.push_back(synth_recording(options, s, c));
  }
  return out;
}

std::string write_synth_dataset(const std::string& dir, const SynthOptions& options,
                                const std::vector<Condition>& conditions) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json manifest;
  manifest["target_rate_hz"] = options.sampling_rate_hz;
  const auto corpus = synth_corpus(options, conditions);
  manifest["channels"] = corpus.front().channel_names;
  manifest["entries"] = nlohmann::json::array();
  for (const auto& rec : corpus) {
    const std::string file = rec.subject_id + "_" + condition_name(rec.condition) + ".csv";
    std::ofstream out(fs::path(dir) / file);
    if (!out) throw Error(Errc::kIo, "cannot write " + (fs::path(dir) / file).string());
    write_matrix(out, rec);
    manifest["entries"].push_back({{"path", file},
                                   {"format", "matrix"},
                                   {"subject", rec.subject_id},
                                   {"dataset", rec.dataset_id},
                                   {"condition", condition_name(rec.condition)},
                                   {"window_s", {0.0, options.duration_s}},
                                   {"sampling_rate_hz", rec.sampling_rate_hz},
                                   {"channels", rec.channel_names}});
  }
  const std::string path = (fs::path(dir) / "manifest.json").string();
  std::ofstream out(path);
  out << manifest.dump(2) << '\n';
  return path;
}

}  // namespace eegid::synth
