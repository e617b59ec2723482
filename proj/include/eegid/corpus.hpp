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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eegid/recording.hpp"

namespace eegid {

enum class FileFormat { kEdf, kMatrix };

struct ManifestEntry {
  std::string path;  // resolved against the manifest directory
  FileFormat format = FileFormat::kEdf;
  std::string subject_id;
  std::string dataset_id;
  Condition condition = Condition::kResting;
  // Segment [start, end) in seconds; nullopt keeps the whole file.
  std::optional<double> window_start_s;
  std::optional<double> window_end_s;
  // Matrix files carry no header, so rate and labels come from here.
  double sampling_rate_hz = 0.0;
  std::vector<std::string> channels;
};

enum class ChannelPolicyKind { kCommon56, kTenTwenty21, kExplicit };

struct ChannelPolicy {
  ChannelPolicyKind kind = ChannelPolicyKind::kCommon56;
  std::vector<std::string> names;  // kExplicit only

  ChannelSet channel_set() const;
  // "common_56", "ten_twenty_21" or "explicit".
  std::string name() const;
};

// Parses "common_56", "56", "ten_twenty_21", "21"; nullopt otherwise.
std::optional<ChannelPolicy> parse_channel_policy(const std::string& text);

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  double target_rate_hz = 128.0;
  ChannelPolicy channel_policy;
};

// JSON manifest; see docs/manifest.md. Relative entry paths are resolved
// against base_dir. Errors: kMalformedManifest.
DatasetManifest parse_manifest(const std::string& json_text, const std::string& base_dir);
DatasetManifest load_manifest_file(const std::string& path);

// Loads, windows, channel-selects and resamples one entry.
// Errors: parse errors prefixed with the file path, kWindowOutOfRange.
EegRecording load_entry(const ManifestEntry& entry, const ChannelSet& channels,
                        double target_rate_hz);

// Every entry of the manifest, in manifest order. Entries are independent and
// may be processed on `workers` threads.
std::vector<EegRecording> build_corpus(const DatasetManifest& manifest, int workers = 1);

struct Corpus {
  std::uint64_t content_hash = 0;
  std::vector<EegRecording> recordings;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed = 0xcbf29ce484222325ull);

// Hash of the manifest settings and the raw bytes of every referenced file.
std::uint64_t manifest_hash(const DatasetManifest& manifest);

// Binary cache container: magic "EEGIDCRP", version, hash, recordings.
void save_corpus(std::ostream& out, const Corpus& corpus);
Corpus load_corpus(std::istream& in);  // Errors: kMalformedCache
void save_corpus_file(const std::string& path, const Corpus& corpus);
Corpus load_corpus_file(const std::string& path);

// Returns the cached corpus when `cache_path` holds one with a matching hash,
// otherwise builds it and rewrites the cache. `cache_hit` reports which.
Corpus ingest(const DatasetManifest& manifest, const std::string& cache_path, int workers = 1,
              bool* cache_hit = nullptr);

}  // namespace eegid
