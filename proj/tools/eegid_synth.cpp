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

// Writes a synthetic dataset (matrix files plus manifest) for smoke runs.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eegid/error.hpp"
#include "eegid/synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Synthetic EEG dataset generator"};
  eegid::synth::SynthOptions o;
  std::string out;
  bool task = false;
  app.add_option("--out", out, "Output directory")->required();
  app.add_option("--subjects", o.n_subjects, "Number of subjects")->check(CLI::Range(2, 999));
  app.add_option("--duration", o.duration_s, "Seconds per recording")->check(CLI::PositiveNumber);
  app.add_option("--rate", o.sampling_rate_hz, "Sampling rate, Hz")->check(CLI::PositiveNumber);
  app.add_option("--noise", o.noise_std, "White noise standard deviation")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "Generator seed");
  app.add_flag("--task", task, "Also write task-condition recordings");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  std::vector<eegid::Condition> conditions{eegid::Condition::kResting};
  if (task) conditions.push_back(eegid::Condition::kTask);
  try {
    std::cout << eegid::synth::write_synth_dataset(out, o, conditions) << "\n";
  } catch (const eegid::Error& e) {
    std::cerr << "eegid_synth: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
