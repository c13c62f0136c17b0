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

#include "nnic/codec.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "nnic/error.hpp"
#include "nnic/metrics.hpp"
#include "nnic/mode_space.hpp"

namespace nnic {

namespace {

constexpr char kMagic[4] = {'N', 'N', 'I', 'C'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
std::uint64_t get_le(std::span<const std::uint8_t> bytes, std::size_t pos, int n) {
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(bytes[pos + i]) << (8 * i);
  return v;
}

std::int64_t sse(const PixelBlock& a, const PixelBlock& b) {
  std::int64_t s = 0;
  for (int i = 0; i < kBlockArea; ++i) {
    const int d = int{a.values[i]} - int{b.values[i]};
    s += d * d;
  }
  return s;
}

// ModeId a candidate MPM entry denotes under the scheme.
ModeId mpm_mode(SchemeKind scheme, TmId tm) {
  if (const auto sym = substituted_symbol(scheme, tm)) return ModeId::nm(*sym);
  return ModeId::tm(tm);
}

std::optional<TmId> neighbour(const std::vector<TmId>& grid, int blocks_x, int bx, int by) {
  if (bx < 0 || by < 0) return std::nullopt;
  return grid[static_cast<std::size_t>(by) * blocks_x + bx];
}

TmId mpm_representative(ModeId best, const MpmSet& mpm, SchemeKind scheme) {
  return best.is_tm() ? best.tm_index() : best_tm_for_mpm(best, mpm, scheme);
}

}  // namespace

const PixelBlock& BlockPredictor::predict(ModeId mode) const {
  if (mode.is_tm()) {
    auto& slot = tm_cache_.at(static_cast<std::size_t>(mode.tm_index()));
    if (!slot) slot = predict_tm(refs_, mode.tm_index());
    return *slot;
  }
  auto& slot = nm_cache_[static_cast<std::size_t>(mode.symbol())];
  if (!slot) slot = models_.at(mode.symbol()).predict(context_);
  return *slot;
}

CandidateList build_candidates(SchemeKind scheme, const PixelBlock& original, const MpmSet& mpm,
                               const BlockPredictor& predictor, const CodecConfig& cfg) {
  std::vector<std::pair<double, TmId>> rough;
  for (TmId m = 0; m < kNumTms; ++m) {
    if (substituted_symbol(scheme, m)) continue;
    const ModeId mode = ModeId::tm(m);
    const double bins = static_cast<double>(encode_luma_mode(mode, mpm, scheme).size());
    const double cost = static_cast<double>(satd8(residual_of(original, predictor.predict(mode)))) + cfg.lambda_pred * bins;
    rough.emplace_back(cost, m);
  }
  std::stable_sort(rough.begin(), rough.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  CandidateList list;
  auto add = [&](ModeId mode) {
    if (std::find(list.modes.begin(), list.modes.end(), mode) != list.modes.end()) return false;
    list.modes.push_back(mode);
    return true;
  };
  for (std::size_t i = 0; i < rough.size() && i < kSatdCandidates; ++i) add(ModeId::tm(rough[i].second));

  int appended = 0;
  for (int i = 0; i < 3 && appended < kMaxMpmCandidates; ++i) {
    if (add(mpm_mode(scheme, mpm[i]))) ++appended;
  }

  const bool force_nms = is_appending(scheme) || scheme == SchemeKind::kSubL1 || scheme == SchemeKind::kSubL3;
  if (force_nms) {
    for (NmSymbol s : scheme_symbols(scheme)) add(ModeId::nm(s));
  }
  return list;
}

PixelBlock reconstruct(const PixelBlock& prediction, const CoeffBlock& levels, const CodecConfig& cfg) {
  const CoeffArray residual = idct8(dequantize(levels, cfg));
  PixelBlock recon;
  for (int i = 0; i < kBlockArea; ++i) {
    const double v = std::floor(prediction.values[i] + residual[i] + 0.5);
    recon.values[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return recon;
}

BlockDecision rd_evaluate(ModeId mode, const PixelBlock& original, const MpmSet& mpm, SchemeKind scheme,
                          const BlockPredictor& predictor, const CodecConfig& cfg) {
  BlockDecision d;
  d.best_mode = mode;
  d.prediction = predictor.predict(mode);

  const Residual r = residual_of(original, d.prediction);
  CoeffArray block{};
  for (int i = 0; i < kBlockArea; ++i) block[i] = r[i];
  d.levels = quantize(dct8(block), cfg);
  d.resid_bits = coeff_bits(d.levels);
  d.mode_bits = static_cast<int>(encode_luma_mode(mode, mpm, scheme).size());
  d.recon = reconstruct(d.prediction, d.levels, cfg);
  d.distortion_sse = sse(original, d.recon);
  d.rd_cost = static_cast<double>(d.distortion_sse) + cfg.lambda_rd * (d.mode_bits + d.resid_bits);
  d.best_tm_for_mpm = mpm_representative(mode, mpm, scheme);
  return d;
}

BlockEncodeResult choose_best(std::span<const ModeId> candidates, SchemeKind scheme, const PixelBlock& original,
                              const MpmSet& mpm, const BlockPredictor& predictor, const CodecConfig& cfg) {
  if (candidates.empty()) throw Error("empty candidate list");
  BlockEncodeResult result;
  bool have = false;
  for (ModeId mode : candidates) {
    BlockDecision d = rd_evaluate(mode, original, mpm, scheme, predictor, cfg);
    result.candidate_costs.emplace_back(mode, d.rd_cost);
    const bool better = !have || d.rd_cost < result.decision.rd_cost ||
                        (d.rd_cost == result.decision.rd_cost && mode < result.decision.best_mode);
    if (better) {
      result.decision = std::move(d);
      have = true;
    }
  }
  result.bins = encode_luma_mode(result.decision.best_mode, mpm, scheme);
  result.bins.append(code_coeffs(result.decision.levels));
  return result;
}

BlockEncodeResult encode_block(SchemeKind scheme, const PixelBlock& original, const MpmSet& mpm,
                               const BlockPredictor& predictor, const CodecConfig& cfg) {
  const CandidateList list = build_candidates(scheme, original, mpm, predictor, cfg);
  return choose_best(list.modes, scheme, original, mpm, predictor, cfg);
}

std::vector<std::uint8_t> serialize_header(const BitstreamHeader& h) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_u32(out, BitstreamHeader::kVersion);
  put_u32(out, static_cast<std::uint32_t>(h.width));
  put_u32(out, static_cast<std::uint32_t>(h.height));
  out.push_back(static_cast<std::uint8_t>(h.qp));
  out.push_back(static_cast<std::uint8_t>(h.scheme));
  out.push_back(static_cast<std::uint8_t>(h.delta1));
  out.push_back(static_cast<std::uint8_t>(h.delta2));
  put_u64(out, h.model_digest);
  put_u64(out, h.body_bits);
  return out;
}

BitstreamHeader parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < BitstreamHeader::kSize) throw Error("malformed stream: truncated header");
  if (!std::equal(kMagic, kMagic + 4, bytes.begin())) throw Error("malformed stream: bad magic");
  if (get_le(bytes, 4, 4) != BitstreamHeader::kVersion) throw Error("malformed stream: unsupported version");
  BitstreamHeader h;
  h.width = static_cast<int>(get_le(bytes, 8, 4));
  h.height = static_cast<int>(get_le(bytes, 12, 4));
  h.qp = bytes[16];
  if (bytes[17] >= kAllSchemes.size()) throw Error("malformed stream: unknown scheme");
  h.scheme = static_cast<SchemeKind>(bytes[17]);
  h.delta1 = bytes[18];
  h.delta2 = bytes[19];
  h.model_digest = get_le(bytes, 20, 8);
  h.body_bits = get_le(bytes, 28, 8);
  if (h.width <= 0 || h.height <= 0 || h.width % kBlockSize || h.height % kBlockSize || h.width > (1 << 16) ||
      h.height > (1 << 16)) {
    throw Error("malformed stream: bad dimensions");
  }
  if (h.qp > 51 || h.delta1 > kMaxDelta || h.delta2 > kMaxDelta) throw Error("malformed stream: bad parameters");
  if ((bytes.size() - BitstreamHeader::kSize) != (h.body_bits + 7) / 8) {
    throw Error("malformed stream: body size does not match header");
  }
  return h;
}

double FrameStats::bits_per_pixel(const Frame& frame) const {
  return static_cast<double>(total_bits) / (static_cast<double>(frame.width()) * frame.height());
}

void write_frame_stats(std::ostream& out, const FrameStats& stats, const Frame& frame) {
  const auto old_precision = out.precision(10);
  out << "width = " << frame.width() << "\n";
  out << "height = " << frame.height() << "\n";
  out << "blocks = " << stats.blocks << "\n";
  out << "total_bits = " << stats.total_bits << "\n";
  out << "header_bits = " << stats.header_bits << "\n";
  out << "mode_bits = " << stats.mode_bits << "\n";
  out << "resid_bits = " << stats.resid_bits << "\n";
  out << "bpp = " << stats.bits_per_pixel(frame) << "\n";
  out << "psnr = " << format_psnr(stats.psnr) << "\n";
  out << "rd_cost = " << stats.rd_cost << "\n";
  out << "nm_blocks = " << stats.nm_blocks << "\n";
  out << "nm_ratio = " << stats.nm_ratio() << "\n";
  for (const auto& [mode, count] : stats.mode_counts) out << "count." << mode.name() << " = " << count << "\n";
  out.precision(old_precision);
}

EncodeResult encode_frame(const Frame& frame, SchemeKind scheme, const CodecConfig& cfg, const ModelRegistry& models,
                          int delta1, int delta2) {
  (void)partition_for_scheme(scheme, delta1, delta2);  // validates deltas
  models.require(scheme);

  EncodeResult result;
  result.recon = Frame(frame.width(), frame.height());
  std::vector<TmId> grid(static_cast<std::size_t>(frame.block_count()), kDc);
  BitWriter body;
  FrameStats& stats = result.stats;

  for (int by = 0; by < frame.blocks_y(); ++by) {
    for (int bx = 0; bx < frame.blocks_x(); ++bx) {
      const RefArray refs = extract_ref_array(result.recon, bx, by);
      const ReferenceContext context = extract_reference_context(result.recon, bx, by);
      const MpmSet mpm =
          derive_mpm(scheme, neighbour(grid, frame.blocks_x(), bx - 1, by), neighbour(grid, frame.blocks_x(), bx, by - 1));
      const BlockPredictor predictor(refs, context, models);
      const PixelBlock original = frame.block(bx, by);

      BlockEncodeResult enc = encode_block(scheme, original, mpm, predictor, cfg);
      body.put(enc.bins);
      result.recon.set_block(bx, by, enc.decision.recon);
      grid[static_cast<std::size_t>(by) * frame.blocks_x() + bx] = enc.decision.best_tm_for_mpm;

      ++stats.blocks;
      ++stats.mode_counts[enc.decision.best_mode];
      if (enc.decision.best_mode.is_nm()) ++stats.nm_blocks;
      stats.mode_bits += static_cast<std::uint64_t>(enc.decision.mode_bits);
      stats.resid_bits += static_cast<std::uint64_t>(enc.decision.resid_bits);
      stats.rd_cost += enc.decision.rd_cost;
      result.blocks.push_back({bx, by, mpm, std::move(enc.decision), std::move(enc.candidate_costs)});
    }
  }

  BitstreamHeader header;
  header.width = frame.width();
  header.height = frame.height();
  header.qp = cfg.qp;
  header.scheme = scheme;
  header.delta1 = delta1;
  header.delta2 = delta2;
  header.model_digest = models.digest(scheme);
  header.body_bits = body.bit_count();

  result.bitstream = serialize_header(header);
  result.bitstream.insert(result.bitstream.end(), body.bytes().begin(), body.bytes().end());
  stats.header_bits = BitstreamHeader::kSize * 8;
  stats.total_bits = result.bitstream.size() * 8;
  stats.psnr = psnr(frame, result.recon);
  return result;
}

Frame decode_frame(std::span<const std::uint8_t> bitstream, const ModelRegistry& models) {
  const BitstreamHeader h = parse_header(bitstream);
  if (models.digest(h.scheme) != h.model_digest) throw Error("model digest mismatch");
  const CodecConfig cfg = CodecConfig::from_qp(h.qp);

  Frame recon(h.width, h.height);
  std::vector<TmId> grid(static_cast<std::size_t>(recon.block_count()), kDc);
  BitReader reader(bitstream.subspan(BitstreamHeader::kSize), h.body_bits);

  try {
    for (int by = 0; by < recon.blocks_y(); ++by) {
      for (int bx = 0; bx < recon.blocks_x(); ++bx) {
        const RefArray refs = extract_ref_array(recon, bx, by);
        const ReferenceContext context = extract_reference_context(recon, bx, by);
        const MpmSet mpm = derive_mpm(h.scheme, neighbour(grid, recon.blocks_x(), bx - 1, by),
                                      neighbour(grid, recon.blocks_x(), bx, by - 1));
        const BlockPredictor predictor(refs, context, models);

        const ModeId mode = decode_luma_mode(reader, mpm, h.scheme);
        const CoeffBlock levels = decode_coeffs(reader);
        recon.set_block(bx, by, reconstruct(predictor.predict(mode), levels, cfg));
        grid[static_cast<std::size_t>(by) * recon.blocks_x() + bx] = mpm_representative(mode, mpm, h.scheme);
      }
    }
  } catch (const Error& e) {
    throw Error(std::string("malformed stream: ") + e.what());
  }
  if (reader.remaining() != 0) throw Error("malformed stream: trailing bits");
  return recon;
}

}  // namespace nnic
