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

#include <fstream>
#include <sstream>

#include "eegid/corpus.hpp"
#include "eegid/edf.hpp"
#include "eegid/error.hpp"
#include "eegid/matrix_format.hpp"
#include "test_util.hpp"

using namespace eegid;
using testutil::EdfSignal;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no eegid::Error thrown");
  return Errc::kInvalidArgument;
}

EdfSignal random_signal(std::mt19937_64& rng, const std::string& label, std::size_t n) {
  std::uniform_int_distribution<int> d(-32768, 32767);
  std::uniform_real_distribution<double> u(10, 500);
  EdfSignal s;
  s.label = label;
  s.phys_min = -u(rng);
  s.phys_max = u(rng);
  s.digital.resize(n);
  for (auto& v : s.digital) v = static_cast<std::int16_t>(d(rng));
  return s;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("EDF decode matches the scripted writer for random layouts") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> nch(1, 8), nrec(1, 5);
  const char* labels[] = {"Fp1.", "Fp2.", "C3..", "C4..", "O1..", "O2..", "Cz..", "Pz.."};
  for (int trial = 0; trial < 40; ++trial) {
    const int ns = nch(rng), nr = nrec(rng);
    const int per_record = 160;
    std::vector<EdfSignal> sig;
    for (int i = 0; i < ns; ++i) sig.push_back(random_signal(rng, labels[i], per_record * nr));
    const auto bytes = testutil::write_edf(sig, std::vector<int>(ns, per_record), nr, 1.0);
    const EegRecording rec = parse_edf(bytes);
    REQUIRE(rec.num_channels() == static_cast<std::size_t>(ns));
    REQUIRE(rec.num_samples() == static_cast<std::size_t>(per_record * nr));
    CHECK(rec.sampling_rate_hz == 160.0);
    for (int i = 0; i < ns; ++i) {
      CHECK(rec.channel_names[i] == sig[i].label);
      const double step = (sig[i].phys_max - sig[i].phys_min) / 65535.0;
      for (std::size_t k = 0; k < rec.num_samples(); ++k) {
        const double want = testutil::edf_physical(sig[i], sig[i].digital[k]);
        REQUIRE(std::abs(rec.data(i, k) - want) <= step);
      }
    }
  }
}

TEST_CASE("EDF annotation signals are dropped") {
  std::mt19937_64 rng(3);
  std::vector<EdfSignal> sig{random_signal(rng, "C3", 256), random_signal(rng, "EDF Annotations", 60),
                             random_signal(rng, "C4", 256)};
  const auto bytes = testutil::write_edf(sig, {128, 30, 128}, 2, 1.0, "EDF+C");
  const auto rec = parse_edf(bytes);
  REQUIRE(rec.num_channels() == 2);
  CHECK(rec.channel_names == std::vector<std::string>{"C3", "C4"});
  CHECK(rec.data(1, 200) == doctest::Approx(testutil::edf_physical(sig[2], sig[2].digital[200])));
}

TEST_CASE("EDF error paths") {
  std::mt19937_64 rng(5);
  std::vector<EdfSignal> sig{random_signal(rng, "C3", 256), random_signal(rng, "C4", 512)};
  SUBCASE("mixed rates") {
    const auto bytes = testutil::write_edf(sig, {128, 256}, 2, 1.0);
    CHECK(code_of([&] { parse_edf(bytes); }) == Errc::kMixedSamplingRates);
  }
  SUBCASE("truncated") {
    sig[1].digital.resize(256);
    auto bytes = testutil::write_edf(sig, {128, 128}, 2, 1.0);
    bytes.resize(bytes.size() - 10);
    CHECK(code_of([&] { parse_edf(bytes); }) == Errc::kTruncatedRecord);
  }
  SUBCASE("short header") {
    std::vector<std::uint8_t> bytes(100, ' ');
    CHECK(code_of([&] { parse_edf(bytes); }) == Errc::kMalformedHeader);
  }
  SUBCASE("discontinuous") {
    sig[1].digital.resize(256);
    const auto bytes = testutil::write_edf(sig, {128, 128}, 2, 1.0, "EDF+D");
    CHECK(code_of([&] { parse_edf(bytes); }) == Errc::kMalformedHeader);
  }
  SUBCASE("missing file") {
    CHECK(code_of([&] { read_edf_file("/nonexistent/x.edf"); }) == Errc::kIo);
  }
}

TEST_CASE("matrix format parses commas and whitespace") {
  std::istringstream in("1, 2 ,3\n\n4\t5 6\n");
  const auto rec = load_matrix(in, 100.0, {"a", "b"});
  CHECK(rec.num_channels() == 2);
  CHECK(rec.num_samples() == 3);
  CHECK(rec.data(1, 2) == 6.0);

  std::istringstream ragged("1,2,3\n4,5\n");
  CHECK(code_of([&] { load_matrix(ragged, 100.0, {"a", "b"}); }) == Errc::kRaggedRows);
  std::istringstream bad("1,x,3\n");
  CHECK(code_of([&] { load_matrix(bad, 100.0, {"a"}); }) == Errc::kNonNumericCell);
  std::istringstream count("1,2\n");
  CHECK(code_of([&] { load_matrix(count, 100.0, {"a", "b"}); }) == Errc::kInvalidArgument);
}

TEST_CASE("matrix format round trip is exact") {
  std::mt19937_64 rng(9);
  EegRecording rec;
  rec.channel_names = {"x", "y", "z"};
  rec.sampling_rate_hz = 128;
  rec.data = Matrix(3, 50);
  for (auto& v : rec.data.values()) v = std::normal_distribution<double>(0, 1e3)(rng);
  std::stringstream s;
  write_matrix(s, rec);
  const auto back = load_matrix(s, 128, rec.channel_names);
  CHECK(back.data == rec.data);
}

TEST_CASE("channel labels normalize and sort") {
  CHECK(normalize_label("Fc5.") == "FC5");
  CHECK(normalize_label("fpz") == "Fpz");
  CHECK(normalize_label("Cpz..") == "CPz");
  CHECK(normalize_label("Oz") == "Oz");
  const ChannelSet set({"Cz", "Fp1", "C3"});
  CHECK(set.names() == std::vector<std::string>{"C3", "Cz", "Fp1"});
  CHECK(code_of([] { ChannelSet(std::vector<std::string>{"Cz", "cz."}); }) == Errc::kInvalidArgument);
  CHECK(ChannelSet::common_56().size() == 56);
  CHECK(ChannelSet::ten_twenty_21().size() == 21);
  const auto common = ChannelSet::common_56();
  const auto ten_twenty = ChannelSet::ten_twenty_21();
  for (const auto& n : ten_twenty.names()) CHECK(common.contains(n));
}

TEST_CASE("select_channels reorders, is idempotent and reports missing labels") {
  std::mt19937_64 rng(2);
  EegRecording rec;
  rec.channel_names = {"Pz..", "fp1", "C3.", "Oz"};
  rec.sampling_rate_hz = 128;
  rec.data = Matrix(4, 10);
  for (auto& v : rec.data.values()) v = std::normal_distribution<double>()(rng);
  const ChannelSet set({"Fp1", "C3", "Pz"});
  const auto once = select_channels(rec, set);
  CHECK(once.channel_names == std::vector<std::string>{"C3", "Fp1", "Pz"});
  CHECK(once.data(0, 3) == rec.data(2, 3));
  CHECK(once.data(2, 7) == rec.data(0, 7));
  const auto twice = select_channels(once, set);
  CHECK(twice.channel_names == once.channel_names);
  CHECK(twice.data == once.data);
  CHECK(code_of([&] { select_channels(rec, ChannelSet({"T7"})); }) == Errc::kMissingChannel);
}

TEST_CASE("manifest parsing") {
  const std::string text = R"({
    "target_rate_hz": 128,
    "channels": "ten_twenty_21",
    "entries": [
      {"path": "a.edf", "subject": "S1", "dataset": "d", "condition": "resting", "window_s": [0, 60]},
      {"path": "b.txt", "format": "matrix", "subject": "S1", "dataset": "d", "condition": "task",
       "sampling_rate_hz": 256, "channels": ["C3", "C4"]}
    ]})";
  const auto m = parse_manifest(text, "/data");
  REQUIRE(m.entries.size() == 2);
  CHECK(m.channel_policy.kind == ChannelPolicyKind::kTenTwenty21);
  CHECK(m.entries[0].path == "/data/a.edf");
  CHECK(m.entries[0].format == FileFormat::kEdf);
  CHECK(*m.entries[0].window_end_s == 60.0);
  CHECK(m.entries[1].format == FileFormat::kMatrix);
  CHECK(m.entries[1].condition == Condition::kTask);
  CHECK(m.entries[1].sampling_rate_hz == 256.0);

  CHECK(parse_manifest(R"({"entries": []})", "").entries.empty());
  CHECK(code_of([] { parse_manifest("{", ""); }) == Errc::kMalformedManifest);
  CHECK(code_of([] {
          parse_manifest(R"({"entries": [{"path": "a.edf", "subject": "S", "dataset": "d",
                            "window_s": [5, 1]}]})", "");
        }) == Errc::kMalformedManifest);
  CHECK(code_of([] {
          parse_manifest(R"({"entries": [{"path": "a.edf", "subject": "S", "dataset": "d"},
                                         {"path": "b.edf", "subject": "S", "dataset": "d"}]})", "");
        }) == Errc::kMalformedManifest);
}

namespace {

// Three 70 s EDF recordings at 160 Hz holding every 10-20 label.
std::filesystem::path write_edf_dataset(const std::string& name, double window_end = 60) {
  const auto dir = testutil::scratch_dir(name);
  std::mt19937_64 rng(17);
  const auto names = ChannelSet::ten_twenty_21().names();
  std::string entries;
  for (int s = 0; s < 3; ++s) {
    std::vector<EdfSignal> sig;
    for (const auto& n : names) sig.push_back(random_signal(rng, n, 160 * 70));
    const auto bytes = testutil::write_edf(sig, std::vector<int>(names.size(), 160), 70, 1.0);
    const std::string file = "s" + std::to_string(s) + ".edf";
    std::ofstream(dir / file, std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()),
                                                     static_cast<std::streamsize>(bytes.size()));
    if (s) entries += ",";
    entries += R"({"path": ")" + file + R"(", "subject": "S)" + std::to_string(s) +
               R"(", "dataset": "edf", "window_s": [0, )" + testutil::fmt_num(window_end) + "]}";
  }
  write_text(dir / "manifest.json",
             R"({"target_rate_hz": 128, "channels": "ten_twenty_21", "entries": [)" + entries + "]}");
  return dir;
}

}  // namespace

TEST_CASE("corpus from EDF files: window, channels, resampling") {
  const auto dir = write_edf_dataset("corpus_edf");
  const auto m = load_manifest_file((dir / "manifest.json").string());
  const auto corpus = build_corpus(m, 2);
  REQUIRE(corpus.size() == 3);
  for (const auto& r : corpus) {
    CHECK(r.sampling_rate_hz == 128.0);
    CHECK(r.num_samples() == 7680);
    CHECK(r.num_channels() == 21);
  }
  CHECK(corpus[1].subject_id == "S1");
  CHECK(corpus[1].class_label() == "edf/S1");
  CHECK(build_corpus(DatasetManifest{}).empty());
}

TEST_CASE("window beyond the recording is rejected") {
  const auto dir = write_edf_dataset("corpus_window", 120);
  const auto m = load_manifest_file((dir / "manifest.json").string());
  CHECK(code_of([&] { build_corpus(m); }) == Errc::kWindowOutOfRange);
}

TEST_CASE("corpus cache round trip and invalidation") {
  const auto dir = write_edf_dataset("corpus_cache");
  const auto m = load_manifest_file((dir / "manifest.json").string());
  const std::string cache = (dir / "cache" / "corpus.bin").string();
  bool hit = true;
  const Corpus first = ingest(m, cache, 1, &hit);
  CHECK_FALSE(hit);
  const Corpus second = ingest(m, cache, 1, &hit);
  CHECK(hit);
  CHECK(second.content_hash == first.content_hash);
  REQUIRE(second.recordings.size() == first.recordings.size());
  for (std::size_t i = 0; i < first.recordings.size(); ++i) {
    CHECK(second.recordings[i].data == first.recordings[i].data);
    CHECK(second.recordings[i].channel_names == first.recordings[i].channel_names);
    CHECK(second.recordings[i].class_label() == first.recordings[i].class_label());
  }
  // A changed input file changes the hash and forces a rebuild.
  {
    std::fstream f(dir / "s0.edf", std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(-2, std::ios::end);
    f.put('\x11');
  }
  const Corpus third = ingest(m, cache, 1, &hit);
  CHECK_FALSE(hit);
  CHECK(third.content_hash != first.content_hash);
  // A damaged cache is rebuilt rather than trusted.
  write_text(cache, "garbage");
  ingest(m, cache, 1, &hit);
  CHECK_FALSE(hit);
  std::ifstream bad(cache, std::ios::binary);
  CHECK_NOTHROW(load_corpus(bad));
  std::istringstream junk("EEGIDCRPxx");
  CHECK(code_of([&] { load_corpus(junk); }) == Errc::kMalformedCache);
}
