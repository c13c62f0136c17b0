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
#include <span>
#include <string>
#include <vector>

namespace nnic {

inline constexpr int kBlockSize = 8;
inline constexpr int kBlockArea = kBlockSize * kBlockSize;
inline constexpr int kMidGray = 128;

// 8x8 block of 8-bit samples, row-major (index = y * 8 + x).
struct PixelBlock {
  std::array<std::uint8_t, kBlockArea> values{};

  std::uint8_t& at(int x, int y) { return values[y * kBlockSize + x]; }
  std::uint8_t at(int x, int y) const { return values[y * kBlockSize + x]; }

  static PixelBlock filled(std::uint8_t v) {
    PixelBlock b;
    b.values.fill(v);
    return b;
  }

  friend bool operator==(const PixelBlock&, const PixelBlock&) = default;
};

PixelBlock transpose(const PixelBlock& block);

// 8-bit monochrome picture whose dimensions are positive multiples of 8.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, std::uint8_t fill = 0);
  Frame(int width, int height, std::vector<std::uint8_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  int blocks_x() const { return width_ / kBlockSize; }
  int blocks_y() const { return height_ / kBlockSize; }
  int block_count() const { return blocks_x() * blocks_y(); }

  std::uint8_t& at(int x, int y) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<const std::uint8_t> samples() const { return samples_; }

  PixelBlock block(int bx, int by) const;
  void set_block(int bx, int by, const PixelBlock& block);

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> samples_;
};

enum class ImageFormat { kPgm, kRawY };

// raw-y needs explicit dimensions; pgm ignores them.
Frame load_frame(const std::filesystem::path& path, ImageFormat format, int width = 0,
                 int height = 0);
Frame parse_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(int width, int height, std::span<const std::uint8_t> samples);
void save_pgm(const Frame& frame, const std::filesystem::path& path);
void save_pgm(const PixelBlock& block, const std::filesystem::path& path);

// Five neighbouring 8x8 blocks feeding a neural mode, in canonical order.
struct ReferenceContext {
  enum Slot { kAboveLeft = 0, kAbove, kAboveRight, kLeft, kBelowLeft };
  static constexpr int kSlots = 5;
  static constexpr int kFlatSize = kSlots * kBlockArea;  // 320

  std::array<PixelBlock, kSlots> blocks{};
  std::array<bool, kSlots> available{};
  // Position of the block being predicted; not part of the network input.
  int block_x = 0;
  int block_y = 0;

  std::array<std::uint8_t, kFlatSize> flatten() const;
};

// 4N+1 = 33 reference samples, ordered from the bottom of the below-left run
// up the left column, through the corner, then along the top and top-right.
struct RefArray {
  static constexpr int kSize = 4 * kBlockSize + 1;
  static constexpr int kCorner = 2 * kBlockSize;

  std::array<int, kSize> samples{};
  std::array<bool, kSize> available{};

  // left(y) is p[-1][y] for y in [0, 15]; top(x) is p[x][-1] for x in [0, 15].
  int left(int y) const { return samples[kCorner - 1 - y]; }
  int top(int x) const { return samples[kCorner + 1 + x]; }
  int corner() const { return samples[kCorner]; }

  // Swapping the left and top runs reverses the array.
  RefArray transposed() const;

  friend bool operator==(const RefArray&, const RefArray&) = default;
};

// Both extractors treat every sample of block (bx, by) and of any later block
// in raster order as not yet reconstructed; they never read those samples.
ReferenceContext extract_reference_context(const Frame& recon, int bx, int by);
RefArray extract_ref_array(const Frame& recon, int bx, int by);

}  // namespace nnic
