// Copyright 2026 The nnic Authors
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

#include "nnic/network.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "nnic/error.hpp"

namespace nnic {

namespace {

constexpr char kMagic[4] = {'N', 'M', 'W', 'T'};
constexpr std::uint32_t kVersion = 1;

class ByteWriter {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw Error("NMWT: truncated file");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  float f32() {
    const float v = std::bit_cast<float>(u32());
    if (!std::isfinite(v)) throw Error("NMWT: non-finite parameter");
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

// One dense layer, accumulating in double with four independent partial
// sums per output.
void dense(const DenseLayer& layer, std::span<const float> in, std::vector<double>& out) {
  out.assign(layer.out_dim, 0.0);
  const std::size_t n = layer.in_dim;
  for (std::uint32_t o = 0; o < layer.out_dim; ++o) {
    const float* w = layer.weights.data() + static_cast<std::size_t>(o) * n;
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      acc[0] += static_cast<double>(w[i]) * in[i];
      acc[1] += static_cast<double>(w[i + 1]) * in[i + 1];
      acc[2] += static_cast<double>(w[i + 2]) * in[i + 2];
      acc[3] += static_cast<double>(w[i + 3]) * in[i + 3];
    }
    for (; i < n; ++i) acc[0] += static_cast<double>(w[i]) * in[i];
    out[o] = static_cast<double>(layer.bias[o]) + ((acc[0] + acc[1]) + (acc[2] + acc[3]));
  }
}

}  // namespace

NetworkModel NetworkModel::zeros() {
  NetworkModel m;
  for (int l = 0; l < kLayers; ++l) {
    DenseLayer& layer = m.layers[l];
    layer.in_dim = kDims[l];
    layer.out_dim = kDims[l + 1];
    layer.weights.assign(static_cast<std::size_t>(layer.in_dim) * layer.out_dim, 0.0f);
    layer.bias.assign(layer.out_dim, 0.0f);
  }
  return m;
}

std::vector<double> NetworkModel::forward_raw(std::span<const float> input) const {
  if (input.size() != kDims[0]) throw Error("network input must have 320 values");
  std::vector<float> activation(input.begin(), input.end());
  std::vector<double> pre;
  for (int l = 0; l < kLayers; ++l) {
    dense(layers[l], activation, pre);
    if (l == kLayers - 1) break;
    activation.resize(pre.size());
    for (std::size_t i = 0; i < pre.size(); ++i) activation[i] = prelu(static_cast<float>(pre[i]), prelu_slopes[l]);
  }
  return pre;
}

std::array<float, ReferenceContext::kFlatSize> normalize_context(const ReferenceContext& context) {
  const auto flat = context.flatten();
  std::array<float, ReferenceContext::kFlatSize> x{};
  for (std::size_t i = 0; i < flat.size(); ++i) x[i] = static_cast<float>(flat[i]) / 255.0f;
  return x;
}

PixelBlock forward(const NetworkModel& model, const ReferenceContext& context) {
  const auto x = normalize_context(context);
  const auto y = model.forward_raw(x);
  PixelBlock out;
  for (int i = 0; i < kBlockArea; ++i) {
    const double v = std::floor(y[i] * 255.0 + 0.5);
    out.values[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return out;
}

PixelBlock NetworkModel::predict(const ReferenceContext& context) const { return forward(*this, context); }

std::uint64_t NetworkModel::digest() const { return fnv1a64(serialize_weights(*this)); }

std::vector<std::uint8_t> serialize_weights(const NetworkModel& model) {
  ByteWriter w;
  w.bytes(kMagic, sizeof kMagic);
  w.u32(kVersion);
  w.u32(NetworkModel::kLayers);
  for (const DenseLayer& layer : model.layers) {
    w.u32(layer.in_dim);
    w.u32(layer.out_dim);
    for (float v : layer.weights) w.f32(v);
    for (float v : layer.bias) w.f32(v);
  }
  for (float s : model.prelu_slopes) w.f32(s);
  return w.take();
}

NetworkModel parse_weights(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic)) throw Error("NMWT: bad magic");
  if (r.u32() != kVersion) throw Error("NMWT: unsupported version");
  if (r.u32() != NetworkModel::kLayers) throw Error("NMWT: dimension chain mismatch (layer count)");

  NetworkModel m;
  for (int l = 0; l < NetworkModel::kLayers; ++l) {
    DenseLayer& layer = m.layers[l];
    layer.in_dim = r.u32();
    layer.out_dim = r.u32();
    if (layer.in_dim != NetworkModel::kDims[l] || layer.out_dim != NetworkModel::kDims[l + 1]) {
      throw Error("NMWT: dimension chain mismatch");
    }
    const std::size_t count = static_cast<std::size_t>(layer.in_dim) * layer.out_dim;
    r.need(4 * (count + layer.out_dim));
    layer.weights.resize(count);
    for (float& v : layer.weights) v = r.f32();
    layer.bias.resize(layer.out_dim);
    for (float& v : layer.bias) v = r.f32();
  }
  for (float& s : m.prelu_slopes) s = r.f32();
  if (!r.done()) throw Error("NMWT: trailing bytes");
  return m;
}

NetworkModel load_weights(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_weights(bytes);
}

void save_weights(const NetworkModel& model, const std::filesystem::path& path) {
  const auto bytes = serialize_weights(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string model_file_name(NmSymbol symbol) {
  std::string name(nm_name(symbol));
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  return name + ".nmwt";
}

void ModelRegistry::set(NmSymbol symbol, std::shared_ptr<const NeuralPredictor> model) {
  models_[symbol] = std::move(model);
}

const NeuralPredictor& ModelRegistry::at(NmSymbol symbol) const {
  const auto it = models_.find(symbol);
  if (it == models_.end() || !it->second) throw Error("missing model: " + std::string(nm_name(symbol)));
  return *it->second;
}

void ModelRegistry::require(SchemeKind scheme) const {
  for (NmSymbol s : scheme_symbols(scheme)) (void)at(s);
}

std::uint64_t ModelRegistry::digest(SchemeKind scheme) const {
  if (scheme_symbols(scheme).empty()) return 0;
  std::uint64_t h = fnv1a64({});
  for (NmSymbol s : scheme_symbols(scheme)) {
    std::uint8_t buf[9];
    buf[0] = static_cast<std::uint8_t>(s);
    const std::uint64_t d = at(s).digest();
    for (int i = 0; i < 8; ++i) buf[1 + i] = static_cast<std::uint8_t>(d >> (8 * i));
    h = fnv1a64(buf, h);
  }
  return h;
}

ModelRegistry load_registry(const std::filesystem::path& dir, SchemeKind scheme) {
  ModelRegistry registry;
  for (NmSymbol s : scheme_symbols(scheme)) {
    const auto path = dir / model_file_name(s);
    if (!std::filesystem::exists(path)) throw Error("missing model: " + std::string(nm_name(s)));
    registry.set(s, std::make_shared<const NetworkModel>(load_weights(path)));
  }
  return registry;
}

}  // namespace nnic
