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

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "eegid/error.hpp"
#include "eegid/svm.hpp"

namespace eegid::svm {

namespace {

constexpr char kMagic[8] = {'E', 'E', 'G', 'I', 'D', 'S', 'V', 'M'};
constexpr std::uint32_t kVersion = 1;
// Guards against absurd allocations when reading a damaged file.
constexpr std::uint64_t kMaxCount = 1ull << 32;

static_assert(std::endian::native == std::endian::little,
              "model container assumes a little-endian host");

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void u8(std::uint8_t v) { raw(&v, 1); }
  void u32(std::uint32_t v) { raw(&v, 4); }
  void u64(std::uint64_t v) { raw(&v, 8); }
  void f64(double v) { raw(&v, 8); }
  void str(const std::string& s) {
    u64(s.size());
    raw(s.data(), s.size());
  }
  void f64s(const std::vector<double>& v) {
    u64(v.size());
    raw(v.data(), v.size() * sizeof(double));
  }

 private:
  void raw(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), n); }
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  std::uint8_t u8() {
    std::uint8_t v;
    raw(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v;
    raw(&v, 4);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    raw(&v, 8);
    return v;
  }
  double f64() {
    double v;
    raw(&v, 8);
    return v;
  }
  std::uint64_t count() {
    const auto n = u64();
    if (n > kMaxCount) throw Error(Errc::kMalformedModel, "implausible element count");
    return n;
  }
  std::string str() {
    std::string s(count(), '\0');
    raw(s.data(), s.size());
    return s;
  }
  std::vector<double> f64s() {
    std::vector<double> v(count());
    raw(v.data(), v.size() * sizeof(double));
    return v;
  }
  void raw(void* p, std::size_t n) {
    in_.read(static_cast<char*>(p), n);
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw Error(Errc::kMalformedModel, "unexpected end of model data");
    }
  }

 private:
  std::istream& in_;
};

}  // namespace

void save_model(std::ostream& out, const MulticlassSvmModel& model) {
  Writer w(out);
  out.write(kMagic, sizeof kMagic);
  w.u32(kVersion);
  w.f64(model.params().c);
  w.f64(model.params().gamma);

  w.u64(model.classes().size());
  for (const auto& c : model.classes()) w.str(c);

  const auto& s = model.standardizer();
  w.f64s(s.means);
  w.f64s(s.stds);
  w.u64(s.constant.size());
  for (auto v : s.constant) w.u8(v);

  const Matrix& pool = model.pool();
  w.u64(pool.rows());
  w.u64(pool.cols());
  for (double v : pool.values()) w.f64(v);

  for (const auto& m : model.members()) {
    w.u64(m.support.size());
    for (auto idx : m.support) w.u32(idx);
    w.f64s(m.dual_coef);
    w.f64(m.bias);
    w.u8(m.iteration_cap_reached ? 1 : 0);
  }
  if (!out) throw Error(Errc::kIo, "failed writing model");
}

MulticlassSvmModel load_model(std::istream& in) {
  Reader r(in);
  char magic[8];
  r.raw(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw Error(Errc::kMalformedModel, "bad magic bytes");
  }
  const auto version = r.u32();
  if (version != kVersion) {
    throw Error(Errc::kMalformedModel, "unsupported model version " + std::to_string(version));
  }
  SvmHyperparams params;
  params.c = r.f64();
  params.gamma = r.f64();

  std::vector<std::string> classes(r.count());
  for (auto& c : classes) c = r.str();

  Standardizer s;
  s.means = r.f64s();
  s.stds = r.f64s();
  s.constant.resize(r.count());
  for (auto& v : s.constant) v = r.u8();
  if (s.stds.size() != s.means.size() || s.constant.size() != s.means.size()) {
    throw Error(Errc::kMalformedModel, "standardizer arrays differ in length");
  }

  const auto rows = r.count();
  const auto cols = r.count();
  if (rows * cols > kMaxCount) throw Error(Errc::kMalformedModel, "implausible pool size");
  Matrix pool(rows, cols);
  for (double& v : pool.values()) v = r.f64();

  std::vector<MulticlassSvmModel::Member> members(classes.size());
  for (auto& m : members) {
    m.support.resize(r.count());
    for (auto& idx : m.support) {
      idx = r.u32();
      if (idx >= rows) throw Error(Errc::kMalformedModel, "support index out of range");
    }
    m.dual_coef = r.f64s();
    if (m.dual_coef.size() != m.support.size()) {
      throw Error(Errc::kMalformedModel, "coefficient count differs from support count");
    }
    m.bias = r.f64();
    m.iteration_cap_reached = r.u8() != 0;
  }
  try {
    return MulticlassSvmModel(std::move(classes), std::move(s), std::move(pool),
                              std::move(members), params);
  } catch (const Error& e) {
    throw Error(Errc::kMalformedModel, e.detail());
  }
}

void save_model_file(const std::string& path, const MulticlassSvmModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot open " + path + " for writing");
  save_model(out, model);
}

MulticlassSvmModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path);
  try {
    return load_model(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

}  // namespace eegid::svm
