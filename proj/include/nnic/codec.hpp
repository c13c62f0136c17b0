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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "nnic/bitio.hpp"
#include "nnic/frame.hpp"
#include "nnic/network.hpp"
#include "nnic/residual.hpp"
#include "nnic/signaling.hpp"

namespace nnic {

// Predictions available at one block position. Traditional modes read only
// the reference array; neural modes read only the five-block context. Each
// prediction is computed at most once.
class BlockPredictor {
 public:
  BlockPredictor(const RefArray& refs, const ReferenceContext& context, const ModelRegistry& models)
      : refs_(refs), context_(context), models_(models) {}

  const PixelBlock& predict(ModeId mode) const;
  const RefArray& refs() const { return refs_; }
  const ReferenceContext& context() const { return context_; }

 private:
  const RefArray& refs_;
  const ReferenceContext& context_;
  const ModelRegistry& models_;
  mutable std::array<std::optional<PixelBlock>, kNumTms> tm_cache_;
  mutable std::array<std::optional<PixelBlock>, kNumNmSymbols> nm_cache_;
};

inline constexpr int kSatdCandidates = 8;
inline constexpr int kMaxMpmCandidates = 2;

struct CandidateList {
  std::vector<ModeId> modes;
};

// Eight cheapest TMs by SATD + lambda_pred * mode bins (substituted TMs are
// skipped), then up to two absent MPMs, then the scheme's neural modes:
// all of them when appending or replacing low-probability TMs, none when
// replacing high-probability TMs (those only enter through the MPMs).
CandidateList build_candidates(SchemeKind scheme, const PixelBlock& original, const MpmSet& mpm,
                               const BlockPredictor& predictor, const CodecConfig& cfg);

struct BlockDecision {
  ModeId best_mode;
  TmId best_tm_for_mpm = kDc;
  double rd_cost = 0.0;  // distortion_sse + lambda_rd * (mode_bits + resid_bits)
  int mode_bits = 0;
  int resid_bits = 0;
  std::int64_t distortion_sse = 0;
  PixelBlock prediction;
  PixelBlock recon;
  CoeffBlock levels;
};

PixelBlock reconstruct(const PixelBlock& prediction, const CoeffBlock& levels, const CodecConfig& cfg);

BlockDecision rd_evaluate(ModeId mode, const PixelBlock& original, const MpmSet& mpm, SchemeKind scheme,
                          const BlockPredictor& predictor, const CodecConfig& cfg);

struct BlockEncodeResult {
  BlockDecision decision;
  BinString bins;  // mode bins followed by coefficient bins
  std::vector<std::pair<ModeId, double>> candidate_costs;
};

// Lowest RD cost wins; ties go to TMs before neural modes, then lower index.
BlockEncodeResult encode_block(SchemeKind scheme, const PixelBlock& original, const MpmSet& mpm,
                               const BlockPredictor& predictor, const CodecConfig& cfg);
BlockEncodeResult choose_best(std::span<const ModeId> candidates, SchemeKind scheme, const PixelBlock& original,
                              const MpmSet& mpm, const BlockPredictor& predictor, const CodecConfig& cfg);

// "NNIC" bitstream header; all integers little-endian, body bits MSB-first.
struct BitstreamHeader {
  static constexpr std::uint32_t kVersion = 1;
  static constexpr std::size_t kSize = 36;

  int width = 0;
  int height = 0;
  int qp = 0;
  SchemeKind scheme = SchemeKind::kAnchor;
  int delta1 = 0;
  int delta2 = 0;
  std::uint64_t model_digest = 0;
  std::uint64_t body_bits = 0;
};

std::vector<std::uint8_t> serialize_header(const BitstreamHeader& header);
BitstreamHeader parse_header(std::span<const std::uint8_t> bytes);

struct FrameStats {
  int blocks = 0;
  std::map<ModeId, int> mode_counts;
  int nm_blocks = 0;
  std::uint64_t header_bits = 0;
  std::uint64_t mode_bits = 0;
  std::uint64_t resid_bits = 0;
  std::uint64_t total_bits = 0;  // whole bitstream including padding
  double psnr = 0.0;
  double rd_cost = 0.0;  // sum of per-block costs

  double nm_ratio() const { return blocks ? static_cast<double>(nm_blocks) / blocks : 0.0; }
  double bits_per_pixel(const Frame& frame) const;
};

void write_frame_stats(std::ostream& out, const FrameStats& stats, const Frame& frame);

struct BlockRecord {
  int bx = 0;
  int by = 0;
  MpmSet mpm;
  BlockDecision decision;
  std::vector<std::pair<ModeId, double>> candidate_costs;
};

struct EncodeResult {
  std::vector<std::uint8_t> bitstream;
  Frame recon;
  FrameStats stats;
  std::vector<BlockRecord> blocks;  // raster order
};

EncodeResult encode_frame(const Frame& frame, SchemeKind scheme, const CodecConfig& cfg, const ModelRegistry& models,
                          int delta1 = 0, int delta2 = 0);
// Throws on malformed streams and when the models do not match the header digest.
Frame decode_frame(std::span<const std::uint8_t> bitstream, const ModelRegistry& models);

}  // namespace nnic
