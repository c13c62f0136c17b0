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

#include "nnic/frame.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <string>

#include "nnic/error.hpp"

namespace nnic {

namespace {

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0 || width % kBlockSize != 0 || height % kBlockSize != 0) {
    throw Error("dimensions not multiple of 8: " + std::to_string(width) + "x" +
                std::to_string(height));
  }
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Axis-aligned rectangle of already reconstructed samples, inclusive bounds.
struct Region {
  int x0, y0, x1, y1;

  bool empty() const { return x1 < x0 || y1 < y0; }
  bool contains(int x, int y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

// The causal region ahead of block (bx, by) is the union of every full row
// above the block row and the part of the block row left of the block.
class CausalRegion {
 public:
  CausalRegion(const Frame& recon, int bx, int by)
      : rows_above_{0, 0, recon.width() - 1, by * kBlockSize - 1},
        row_left_{0, by * kBlockSize, bx * kBlockSize - 1, by * kBlockSize + kBlockSize - 1} {}

  bool empty() const { return rows_above_.empty() && row_left_.empty(); }

  bool contains(int x, int y) const { return rows_above_.contains(x, y) || row_left_.contains(x, y); }

  // Nearest reconstructed coordinate (Euclidean) to (x, y): clamp into each
  // rectangle independently, keep the closer one; the rows above win ties.
  std::pair<int, int> nearest(int x, int y) const {
    std::optional<std::pair<int, int>> best;
    long best_d2 = std::numeric_limits<long>::max();
    for (const Region* r : {&rows_above_, &row_left_}) {
      if (r->empty()) continue;
      const int cx = std::clamp(x, r->x0, r->x1);
      const int cy = std::clamp(y, r->y0, r->y1);
      const long d2 = static_cast<long>(cx - x) * (cx - x) + static_cast<long>(cy - y) * (cy - y);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = {cx, cy};
      }
    }
    return *best;
  }

 private:
  Region rows_above_;
  Region row_left_;
};

void check_block_index(const Frame& recon, int bx, int by) {
  if (bx < 0 || by < 0 || bx >= recon.blocks_x() || by >= recon.blocks_y()) {
    throw Error("block index out of range: (" + std::to_string(bx) + ", " + std::to_string(by) +
                ")");
  }
}

}  // namespace

PixelBlock transpose(const PixelBlock& block) {
  PixelBlock t;
  for (int y = 0; y < kBlockSize; ++y)
    for (int x = 0; x < kBlockSize; ++x) t.at(x, y) = block.at(y, x);
  return t;
}

Frame::Frame(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

Frame::Frame(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  check_dimensions(width, height);
  if (samples_.size() != static_cast<std::size_t>(width) * height) {
    throw Error("sample count does not match dimensions");
  }
}

PixelBlock Frame::block(int bx, int by) const {
  PixelBlock b;
  for (int y = 0; y < kBlockSize; ++y)
    for (int x = 0; x < kBlockSize; ++x) b.at(x, y) = at(bx * kBlockSize + x, by * kBlockSize + y);
  return b;
}

void Frame::set_block(int bx, int by, const PixelBlock& block) {
  for (int y = 0; y < kBlockSize; ++y)
    for (int x = 0; x < kBlockSize; ++x) at(bx * kBlockSize + x, by * kBlockSize + y) = block.at(x, y);
}

Frame parse_pgm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&]() -> int {
    skip_space();
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) throw Error("malformed PGM header");
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos++] - '0');
      if (v > 1 << 20) throw Error("malformed PGM header");
    }
    return static_cast<int>(v);
  };

  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw Error("malformed PGM header");
  pos = 2;
  const int width = read_int();
  const int height = read_int();
  const int maxval = read_int();
  if (maxval != 255) throw Error("malformed PGM header: maxval must be 255");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw Error("malformed PGM header");
  ++pos;
  check_dimensions(width, height);

  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() - pos < count) throw Error("truncated payload");
  return Frame(width, height, std::vector<std::uint8_t>(bytes.begin() + pos, bytes.begin() + pos + count));
}

Frame load_frame(const std::filesystem::path& path, ImageFormat format, int width, int height) {
  const auto bytes = read_file(path);
  if (format == ImageFormat::kPgm) return parse_pgm(bytes);

  if (width <= 0 || height <= 0) throw Error("raw-y input requires width and height");
  check_dimensions(width, height);
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() < count) throw Error("truncated payload");
  if (bytes.size() > count) throw Error("raw-y payload larger than width x height");
  return Frame(width, height, bytes);
}

std::vector<std::uint8_t> encode_pgm(int width, int height, std::span<const std::uint8_t> samples) {
  const std::string header = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), samples.begin(), samples.end());
  return out;
}

namespace {
void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}
}  // namespace

void save_pgm(const Frame& frame, const std::filesystem::path& path) {
  write_bytes(path, encode_pgm(frame.width(), frame.height(), frame.samples()));
}

void save_pgm(const PixelBlock& block, const std::filesystem::path& path) {
  write_bytes(path, encode_pgm(kBlockSize, kBlockSize, block.values));
}

std::array<std::uint8_t, ReferenceContext::kFlatSize> ReferenceContext::flatten() const {
  std::array<std::uint8_t, kFlatSize> flat{};
  auto it = flat.begin();
  for (const PixelBlock& b : blocks) it = std::copy(b.values.begin(), b.values.end(), it);
  return flat;
}

RefArray RefArray::transposed() const {
  RefArray t;
  std::reverse_copy(samples.begin(), samples.end(), t.samples.begin());
  std::reverse_copy(available.begin(), available.end(), t.available.begin());
  return t;
}

ReferenceContext extract_reference_context(const Frame& recon, int bx, int by) {
  check_block_index(recon, bx, by);
  static constexpr std::array<std::pair<int, int>, ReferenceContext::kSlots> kOffsets = {
      {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {-1, 1}}};

  ReferenceContext ctx;
  ctx.block_x = bx;
  ctx.block_y = by;
  const CausalRegion region(recon, bx, by);

  for (int slot = 0; slot < ReferenceContext::kSlots; ++slot) {
    const int nx = bx + kOffsets[slot].first;
    const int ny = by + kOffsets[slot].second;
    const bool in_frame = nx >= 0 && ny >= 0 && nx < recon.blocks_x() && ny < recon.blocks_y();
    ctx.available[slot] = in_frame && (ny < by || (ny == by && nx < bx));

    PixelBlock& dst = ctx.blocks[slot];
    if (region.empty()) {
      dst = PixelBlock::filled(kMidGray);
      continue;
    }
    for (int y = 0; y < kBlockSize; ++y) {
      for (int x = 0; x < kBlockSize; ++x) {
        const int px = nx * kBlockSize + x;
        const int py = ny * kBlockSize + y;
        const auto [sx, sy] = region.contains(px, py) ? std::pair{px, py} : region.nearest(px, py);
        dst.at(x, y) = recon.at(sx, sy);
      }
    }
  }
  return ctx;
}

RefArray extract_ref_array(const Frame& recon, int bx, int by) {
  check_block_index(recon, bx, by);
  const CausalRegion region(recon, bx, by);
  const int x0 = bx * kBlockSize;
  const int y0 = by * kBlockSize;

  RefArray refs;
  for (int i = 0; i < RefArray::kSize; ++i) {
    int px, py;
    if (i < RefArray::kCorner) {
      px = x0 - 1;
      py = y0 + (RefArray::kCorner - 1 - i);
    } else {
      px = x0 + (i - RefArray::kCorner - 1);
      py = y0 - 1;
    }
    const bool ok = px >= 0 && py >= 0 && px < recon.width() && py < recon.height() &&
                    region.contains(px, py);
    refs.available[i] = ok;
    refs.samples[i] = ok ? recon.at(px, py) : 0;
  }

  const auto first = std::find(refs.available.begin(), refs.available.end(), true);
  if (first == refs.available.end()) {
    refs.samples.fill(kMidGray);
    return refs;
  }
  if (!refs.available[0]) refs.samples[0] = refs.samples[first - refs.available.begin()];
  for (int i = 1; i < RefArray::kSize; ++i) {
    if (!refs.available[i]) refs.samples[i] = refs.samples[i - 1];
  }
  return refs;
}

}  // namespace nnic
