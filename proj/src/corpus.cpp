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

#include "eegid/corpus.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "eegid/dsp.hpp"
#include "eegid/edf.hpp"
#include "eegid/error.hpp"
#include "eegid/matrix_format.hpp"
#include "eegid/parallel.hpp"

namespace eegid {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kCacheMagic[8] = {'E', 'E', 'G', 'I', 'D', 'C', 'R', 'P'};
constexpr std::uint32_t kCacheVersion = 1;
constexpr std::uint64_t kMaxCount = 1ull << 34;

static_assert(std::endian::native == std::endian::little,
              "corpus cache assumes a little-endian host");

[[noreturn]] void bad_manifest(const std::string& what) {
  throw Error(Errc::kMalformedManifest, what);
}

std::string required_string(const json& j, const char* key, std::size_t index) {
  if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
    bad_manifest("entry " + std::to_string(index) + ": missing string field '" + key + "'");
  }
  return j[key].get<std::string>();
}

std::vector<std::string> string_list(const json& j, const std::string& context) {
  if (!j.is_array()) bad_manifest(context + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) bad_manifest(context + " must be a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::size_t seconds_to_sample(double seconds, double fs) {
  return static_cast<std::size_t>(std::llround(seconds * fs));
}

void put_u64(std::ostream& out, std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ostream& out, double v) { out.write(reinterpret_cast<const char*>(&v), 8); }
void put_str(std::ostream& out, const std::string& s) {
  put_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void get_raw(std::istream& in, void* p, std::size_t n) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw Error(Errc::kMalformedCache, "unexpected end of cache data");
  }
}
std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v;
  get_raw(in, &v, 8);
  return v;
}
std::uint64_t get_count(std::istream& in) {
  const auto n = get_u64(in);
  if (n > kMaxCount) throw Error(Errc::kMalformedCache, "implausible element count");
  return n;
}
double get_f64(std::istream& in) {
  double v;
  get_raw(in, &v, 8);
  return v;
}
std::string get_str(std::istream& in) {
  std::string s(get_count(in), '\0');
  get_raw(in, s.data(), s.size());
  return s;
}

}  // namespace

ChannelSet ChannelPolicy::channel_set() const {
  switch (kind) {
    case ChannelPolicyKind::kCommon56: return ChannelSet::common_56();
    case ChannelPolicyKind::kTenTwenty21: return ChannelSet::ten_twenty_21();
    case ChannelPolicyKind::kExplicit: return ChannelSet(names);
  }
  return ChannelSet::common_56();
}

std::string ChannelPolicy::name() const {
  switch (kind) {
    case ChannelPolicyKind::kCommon56: return "common_56";
    case ChannelPolicyKind::kTenTwenty21: return "ten_twenty_21";
    case ChannelPolicyKind::kExplicit: return "explicit";
  }
  return "?";
}

std::optional<ChannelPolicy> parse_channel_policy(const std::string& text) {
  if (text == "common_56" || text == "56") return ChannelPolicy{ChannelPolicyKind::kCommon56, {}};
  if (text == "ten_twenty_21" || text == "21") {
    return ChannelPolicy{ChannelPolicyKind::kTenTwenty21, {}};
  }
  return std::nullopt;
}

DatasetManifest parse_manifest(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    bad_manifest(e.what());
  }
  if (!root.is_object()) bad_manifest("top level must be an object");

  DatasetManifest m;
  if (root.contains("target_rate_hz")) {
    if (!root["target_rate_hz"].is_number()) bad_manifest("target_rate_hz must be a number");
    m.target_rate_hz = root["target_rate_hz"].get<double>();
    if (!(m.target_rate_hz > 0.0)) bad_manifest("target_rate_hz must be positive");
  }
  if (root.contains("channels")) {
    const auto& c = root["channels"];
    if (c.is_string()) {
      auto p = parse_channel_policy(c.get<std::string>());
      if (!p) bad_manifest("unknown channel policy '" + c.get<std::string>() + "'");
      m.channel_policy = *p;
    } else {
      m.channel_policy.kind = ChannelPolicyKind::kExplicit;
      m.channel_policy.names = string_list(c, "channels");
      try {
        (void)ChannelSet(m.channel_policy.names);
      } catch (const Error& e) {
        bad_manifest("channels: " + e.detail());
      }
    }
  }
  if (!root.contains("entries") || !root["entries"].is_array()) {
    bad_manifest("missing 'entries' list");
  }

  std::set<std::tuple<std::string, std::string, Condition>> seen;
  const fs::path base(base_dir);
  std::size_t index = 0;
  for (const auto& j : root["entries"]) {
    if (!j.is_object()) bad_manifest("entry " + std::to_string(index) + " is not an object");
    ManifestEntry e;
    const fs::path p(required_string(j, "path", index));
    e.path = (p.is_absolute() ? p : base / p).lexically_normal().string();
    e.subject_id = required_string(j, "subject", index);
    e.dataset_id = required_string(j, "dataset", index);

    std::string format;
    if (j.contains("format")) {
      format = required_string(j, "format", index);
    } else {
      format = p.extension() == ".edf" || p.extension() == ".EDF" ? "edf" : "matrix";
    }
    if (format == "edf") {
      e.format = FileFormat::kEdf;
    } else if (format == "matrix") {
      e.format = FileFormat::kMatrix;
    } else {
      bad_manifest("entry " + std::to_string(index) + ": unknown format '" + format + "'");
    }

    if (j.contains("condition")) {
      auto c = parse_condition(required_string(j, "condition", index));
      if (!c) bad_manifest("entry " + std::to_string(index) + ": unknown condition");
      e.condition = *c;
    }
    if (j.contains("window_s")) {
      const auto& w = j["window_s"];
      if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
        bad_manifest("entry " + std::to_string(index) + ": window_s must be [start, end]");
      }
      const double a = w[0].get<double>(), b = w[1].get<double>();
      if (!(a >= 0.0) || !(a < b)) {
        bad_manifest("entry " + std::to_string(index) + ": window needs 0 <= start < end");
      }
      e.window_start_s = a;
      e.window_end_s = b;
    }
    if (e.format == FileFormat::kMatrix) {
      if (!j.contains("sampling_rate_hz") || !j["sampling_rate_hz"].is_number() ||
          !(j["sampling_rate_hz"].get<double>() > 0.0)) {
        bad_manifest("entry " + std::to_string(index) + ": matrix files need sampling_rate_hz");
      }
      e.sampling_rate_hz = j["sampling_rate_hz"].get<double>();
      if (!j.contains("channels")) {
        bad_manifest("entry " + std::to_string(index) + ": matrix files need channels");
      }
      e.channels = string_list(j["channels"], "entry " + std::to_string(index) + " channels");
    }
    if (!seen.emplace(e.dataset_id, e.subject_id, e.condition).second) {
      bad_manifest("duplicate entry for " + e.dataset_id + "/" + e.subject_id + " (" +
                   condition_name(e.condition) + ")");
    }
    m.entries.push_back(std::move(e));
    ++index;
  }
  return m;
}

DatasetManifest load_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open manifest " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_manifest(ss.str(), fs::path(path).parent_path().string());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

EegRecording load_entry(const ManifestEntry& entry, const ChannelSet& channels,
                        double target_rate_hz) {
  EegRecording rec;
  try {
    rec = entry.format == FileFormat::kEdf
              ? read_edf_file(entry.path)
              : load_matrix_file(entry.path, entry.sampling_rate_hz, entry.channels);
  } catch (const Error& e) {
    if (e.detail().rfind(entry.path, 0) == 0) throw;
    throw Error(e.code(), entry.path + ": " + e.detail());
  }
  rec.subject_id = entry.subject_id;
  rec.dataset_id = entry.dataset_id;
  rec.condition = entry.condition;

  if (entry.window_start_s) {
    const double fs = rec.sampling_rate_hz;
    const std::size_t first = seconds_to_sample(*entry.window_start_s, fs);
    const std::size_t last = seconds_to_sample(*entry.window_end_s, fs);
    if (last > rec.num_samples() || first >= last) {
      std::ostringstream msg;
      msg << entry.path << ": window [" << *entry.window_start_s << ", " << *entry.window_end_s
          << "] s exceeds the " << rec.duration_s() << " s recording";
      throw Error(Errc::kWindowOutOfRange, msg.str());
    }
    rec.data = rec.data.slice_cols(first, last - first);
  }
  try {
    rec = select_channels(rec, channels);
    rec = dsp::resample(rec, target_rate_hz);
  } catch (const Error& e) {
    throw Error(e.code(), entry.path + ": " + e.detail());
  }
  return rec;
}

std::vector<EegRecording> build_corpus(const DatasetManifest& manifest, int workers) {
  const ChannelSet channels = manifest.channel_policy.channel_set();
  std::vector<EegRecording> out(manifest.entries.size());
  parallel_for(out.size(), workers, [&](std::size_t i) {
    out[i] = load_entry(manifest.entries[i], channels, manifest.target_rate_hz);
  });
  return out;
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t manifest_hash(const DatasetManifest& manifest) {
  std::ostringstream settings;
  settings.precision(17);
  settings << "v" << kCacheVersion << '|' << manifest.target_rate_hz << '|'
           << manifest.channel_policy.name();
  for (const auto& n : manifest.channel_policy.names) settings << ',' << n;
  std::uint64_t h = fnv1a(settings.str().data(), settings.str().size());
  for (const auto& e : manifest.entries) {
    std::ostringstream s;
    s.precision(17);
    s << '|' << e.path << '|' << static_cast<int>(e.format) << '|' << e.subject_id << '|'
      << e.dataset_id << '|' << condition_name(e.condition) << '|'
      << e.window_start_s.value_or(-1.0) << '|' << e.window_end_s.value_or(-1.0) << '|'
      << e.sampling_rate_hz;
    for (const auto& c : e.channels) s << ',' << c;
    h = fnv1a(s.str().data(), s.str().size(), h);
    std::vector<std::uint8_t> bytes;
    try {
      bytes = read_binary_file(e.path);
    } catch (const Error& err) {
      throw Error(err.code(), e.path + ": " + err.detail());
    }
    h = fnv1a(bytes.data(), bytes.size(), h);
  }
  return h;
}

void save_corpus(std::ostream& out, const Corpus& corpus) {
  out.write(kCacheMagic, sizeof kCacheMagic);
  put_u64(out, kCacheVersion);
  put_u64(out, corpus.content_hash);
  put_u64(out, corpus.recordings.size());
  for (const auto& r : corpus.recordings) {
    put_str(out, r.subject_id);
    put_str(out, r.dataset_id);
    put_u64(out, static_cast<std::uint64_t>(r.condition));
    put_f64(out, r.sampling_rate_hz);
    put_u64(out, r.channel_names.size());
    for (const auto& n : r.channel_names) put_str(out, n);
    put_u64(out, r.data.rows());
    put_u64(out, r.data.cols());
    out.write(reinterpret_cast<const char*>(r.data.values().data()),
              static_cast<std::streamsize>(r.data.values().size() * sizeof(double)));
  }
  if (!out) throw Error(Errc::kIo, "failed writing corpus cache");
}

Corpus load_corpus(std::istream& in) {
  char magic[8];
  get_raw(in, magic, sizeof magic);
  if (std::memcmp(magic, kCacheMagic, sizeof magic) != 0) {
    throw Error(Errc::kMalformedCache, "bad magic bytes");
  }
  if (get_u64(in) != kCacheVersion) throw Error(Errc::kMalformedCache, "unsupported version");
  Corpus c;
  c.content_hash = get_u64(in);
  c.recordings.resize(get_count(in));
  for (auto& r : c.recordings) {
    r.subject_id = get_str(in);
    r.dataset_id = get_str(in);
    const auto cond = get_u64(in);
    if (cond > 1) throw Error(Errc::kMalformedCache, "bad condition code");
    r.condition = static_cast<Condition>(cond);
    r.sampling_rate_hz = get_f64(in);
    r.channel_names.resize(get_count(in));
    for (auto& n : r.channel_names) n = get_str(in);
    const auto rows = get_count(in);
    const auto cols = get_count(in);
    if (rows * cols > kMaxCount) throw Error(Errc::kMalformedCache, "implausible matrix size");
    r.data = Matrix(rows, cols);
    get_raw(in, r.data.values().data(), r.data.values().size() * sizeof(double));
    try {
      validate(r);
    } catch (const Error& e) {
      throw Error(Errc::kMalformedCache, e.detail());
    }
  }
  return c;
}

void save_corpus_file(const std::string& path, const Corpus& corpus) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  // Write aside and rename so an interrupted run never leaves a torn cache.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIo, "cannot open " + tmp + " for writing");
    save_corpus(out, corpus);
  }
  fs::rename(tmp, path);
}

Corpus load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path);
  try {
    return load_corpus(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

Corpus ingest(const DatasetManifest& manifest, const std::string& cache_path, int workers,
              bool* cache_hit) {
  const std::uint64_t hash = manifest_hash(manifest);
  if (cache_hit) *cache_hit = false;
  if (!cache_path.empty() && fs::exists(cache_path)) {
    try {
      Corpus cached = load_corpus_file(cache_path);
      if (cached.content_hash == hash) {
        if (cache_hit) *cache_hit = true;
        return cached;
      }
    } catch (const Error&) {
      // A damaged cache is rebuilt.
    }
  }
  Corpus c{hash, build_corpus(manifest, workers)};
  if (!cache_path.empty()) save_corpus_file(cache_path, c);
  return c;
}

}  // namespace eegid
