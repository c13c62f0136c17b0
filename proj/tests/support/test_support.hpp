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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "nnic/codec.hpp"
#include "nnic/frame.hpp"
#include "nnic/network.hpp"

namespace nnic::testing {

std::filesystem::path data_dir();
// Fresh, empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  // Uniform in [0, 1) with 24 bits.
  double unit() { return static_cast<double>(next() >> 40) / static_cast<double>(1 << 24); }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

// Deterministic textured test images (>= 128x128): 0 smooth gradients with
// edges, 1 oriented stripes, 2 noisy blobs.
Frame textured_image(int variant, int width = 128, int height = 128);
Frame random_frame(std::uint64_t seed, int width, int height);

// Full-size model whose parameters follow the golden generator's splitmix64 stream.
NetworkModel splitmix_model(std::uint64_t seed, std::array<float, 3> slopes);

// Cheap context-driven predictor: a symbol-dependent blend of the above and
// left neighbours. Good enough to win some blocks.
class StubPredictor final : public NeuralPredictor {
 public:
  explicit StubPredictor(int variant) : variant_(variant) {}
  PixelBlock predict(const ReferenceContext& context) const override;
  std::uint64_t digest() const override { return 0x5157ull * 1000 + static_cast<std::uint64_t>(variant_); }

 private:
  int variant_;
};

// Checkerboard of 0 and 255; never useful.
class UselessPredictor final : public NeuralPredictor {
 public:
  PixelBlock predict(const ReferenceContext&) const override;
  std::uint64_t digest() const override { return 0xbadull; }
};

// Returns the original block at the context's position.
class OraclePredictor final : public NeuralPredictor {
 public:
  explicit OraclePredictor(Frame original) : original_(std::move(original)) {}
  PixelBlock predict(const ReferenceContext& context) const override {
    return original_.block(context.block_x, context.block_y);
  }
  std::uint64_t digest() const override { return 0x04ac1eull; }

 private:
  Frame original_;
};

class CountingPredictor final : public NeuralPredictor {
 public:
  PixelBlock predict(const ReferenceContext&) const override {
    ++calls;
    return PixelBlock::filled(kMidGray);
  }
  std::uint64_t digest() const override { return 0xc0ffeeull; }
  mutable std::atomic<long> calls{0};
};

// Registry with a StubPredictor for every symbol the scheme uses.
ModelRegistry stub_registry(SchemeKind scheme);
// Same predictor registered for every symbol of the scheme.
ModelRegistry uniform_registry(SchemeKind scheme, std::shared_ptr<const NeuralPredictor> model);

}  // namespace nnic::testing
