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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "nnic/frame.hpp"
#include "nnic/modes.hpp"

namespace nnic {

// Anything that maps a five-block reference context to an 8x8 prediction.
// NetworkModel is the production implementation; tests inject others.
class NeuralPredictor {
 public:
  virtual ~NeuralPredictor() = default;
  virtual PixelBlock predict(const ReferenceContext& context) const = 0;
  // Identifies the parameters; written into bitstream headers.
  virtual std::uint64_t digest() const = 0;
};

struct DenseLayer {
  std::uint32_t in_dim = 0;
  std::uint32_t out_dim = 0;
  std::vector<float> weights;  // out_dim x in_dim, row-major
  std::vector<float> bias;     // out_dim
};

inline float prelu(float v, float slope) { return v >= 0.0f ? v : slope * v; }

// Four fully connected layers 320 -> 1024 -> 1024 -> 1024 -> 64 with a
// scalar-slope PReLU after each of the first three.
class NetworkModel final : public NeuralPredictor {
 public:
  static constexpr int kLayers = 4;
  static constexpr std::array<std::uint32_t, kLayers + 1> kDims = {320, 1024, 1024, 1024, 64};

  std::array<DenseLayer, kLayers> layers;
  std::array<float, kLayers - 1> prelu_slopes{};

  // Correctly shaped model with every parameter zero.
  static NetworkModel zeros();

  // Network output before de-normalisation, for input already scaled to [0, 1].
  std::vector<double> forward_raw(std::span<const float> input) const;

  PixelBlock predict(const ReferenceContext& context) const override;
  std::uint64_t digest() const override;
};

// Inputs are divided by 255; outputs are multiplied by 255, rounded half up
// and clamped to [0, 255].
PixelBlock forward(const NetworkModel& model, const ReferenceContext& context);
std::array<float, ReferenceContext::kFlatSize> normalize_context(const ReferenceContext& context);

// "NMWT" little-endian weight file.
std::vector<std::uint8_t> serialize_weights(const NetworkModel& model);
NetworkModel parse_weights(std::span<const std::uint8_t> bytes);
NetworkModel load_weights(const std::filesystem::path& path);
void save_weights(const NetworkModel& model, const std::filesystem::path& path);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

// File name of a symbol's model inside a model directory, e.g. "nm7-na.nmwt".
std::string model_file_name(NmSymbol symbol);

class ModelRegistry {
 public:
  void set(NmSymbol symbol, std::shared_ptr<const NeuralPredictor> model);
  bool contains(NmSymbol symbol) const { return models_.count(symbol) != 0; }
  // Throws "missing model: <symbol>".
  const NeuralPredictor& at(NmSymbol symbol) const;

  // Throws for the first symbol of the scheme without a model.
  void require(SchemeKind scheme) const;
  // Combined digest of the scheme's models in signalling order; 0 for anchor.
  std::uint64_t digest(SchemeKind scheme) const;

 private:
  std::map<NmSymbol, std::shared_ptr<const NeuralPredictor>> models_;
};

// Loads one file per symbol the scheme needs.
ModelRegistry load_registry(const std::filesystem::path& dir, SchemeKind scheme);

}  // namespace nnic
