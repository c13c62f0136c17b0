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

#include "nnic/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "nnic/error.hpp"

namespace nnic {

namespace {

constexpr char kMagic[4] = {'N', 'M', 'D', 'S'};
constexpr std::uint32_t kVersion = 1;

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int n) {
  for (int i = 0; i < n; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> b, std::size_t pos, int n) {
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(b[pos + i]) << (8 * i);
  return v;
}

std::int64_t block_sse(const PixelBlock& a, const PixelBlock& b) {
  std::int64_t s = 0;
  for (int i = 0; i < kBlockArea; ++i) {
    const int d = int{a.values[i]} - int{b.values[i]};
    s += d * d;
  }
  return s;
}

}  // namespace

std::vector<std::uint8_t> serialize_dataset(std::span<const TrainingSample> samples) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_le(out, kVersion, 4);
  put_le(out, kBlockSize, 4);
  put_le(out, samples.size(), 8);
  out.reserve(out.size() + samples.size() * TrainingSample::kRecordSize);
  for (const auto& s : samples) {
    out.insert(out.end(), s.context.begin(), s.context.end());
    out.insert(out.end(), s.target.begin(), s.target.end());
    out.push_back(static_cast<std::uint8_t>(s.best_tm));
  }
  return out;
}

std::vector<TrainingSample> parse_dataset(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kDatasetHeaderSize) throw Error("NMDS: truncated header");
  if (!std::equal(kMagic, kMagic + 4, bytes.begin())) throw Error("NMDS: bad magic");
  if (get_le(bytes, 4, 4) != kVersion) throw Error("NMDS: unsupported version");
  if (get_le(bytes, 8, 4) != kBlockSize) throw Error("NMDS: unsupported block size");
  const std::uint64_t count = get_le(bytes, 12, 8);
  if ((bytes.size() - kDatasetHeaderSize) / TrainingSample::kRecordSize < count ||
      bytes.size() - kDatasetHeaderSize != count * TrainingSample::kRecordSize) {
    throw Error("NMDS: payload size does not match record count");
  }
  std::vector<TrainingSample> samples(count);
  std::size_t pos = kDatasetHeaderSize;
  for (auto& s : samples) {
    std::copy_n(bytes.begin() + pos, s.context.size(), s.context.begin());
    pos += s.context.size();
    std::copy_n(bytes.begin() + pos, s.target.size(), s.target.begin());
    pos += s.target.size();
    s.best_tm = bytes[pos++];
    if (!is_valid_tm(s.best_tm)) throw Error("NMDS: best TM out of range");
  }
  return samples;
}

void write_dataset(std::span<const TrainingSample> samples, const std::filesystem::path& path) {
  const auto bytes = serialize_dataset(samples);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<TrainingSample> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_dataset(bytes);
}

std::vector<TrainingSample> samples_from_encoding(const Frame& original, const EncodeResult& anchor) {
  std::vector<TrainingSample> samples;
  samples.reserve(anchor.blocks.size());
  for (const BlockRecord& rec : anchor.blocks) {
    if (!rec.decision.best_mode.is_tm()) throw Error("training samples need an anchor encoding");
    TrainingSample s;
    // The final reconstruction equals the encoder's state for every block
    // earlier in raster order, so the context is the one the encoder saw.
    s.context = extract_reference_context(anchor.recon, rec.bx, rec.by).flatten();
    s.target = original.block(rec.bx, rec.by).values;
    s.best_tm = rec.decision.best_mode.tm_index();
    samples.push_back(s);
  }
  return samples;
}

std::vector<TrainingSample> collect_training_samples(std::span<const Frame> frames, int qp) {
  const CodecConfig cfg = CodecConfig::from_qp(qp);
  const ModelRegistry none;
  std::vector<TrainingSample> all;
  for (const Frame& f : frames) {
    const EncodeResult enc = encode_frame(f, SchemeKind::kAnchor, cfg, none);
    auto s = samples_from_encoding(f, enc);
    all.insert(all.end(), s.begin(), s.end());
  }
  return all;
}

std::size_t extract_dataset(std::span<const Frame> frames, int qp, const std::filesystem::path& out) {
  const auto samples = collect_training_samples(frames, qp);
  write_dataset(samples, out);
  return samples.size();
}

std::vector<ModeLogRecord> collect_mode_log(const Frame& original, const CodecConfig& cfg,
                                            std::span<const CandidateModel> candidates) {
  const ModelRegistry none;
  const EncodeResult enc = encode_frame(original, SchemeKind::kAnchor, cfg, none);
  std::vector<ModeLogRecord> log;
  log.reserve(enc.blocks.size());
  for (const BlockRecord& rec : enc.blocks) {
    const PixelBlock block = original.block(rec.bx, rec.by);
    const RefArray refs = extract_ref_array(enc.recon, rec.bx, rec.by);
    const ReferenceContext ctx = extract_reference_context(enc.recon, rec.bx, rec.by);

    ModeLogRecord r;
    r.best_tm = rec.decision.best_mode.tm_index();
    for (TmId m = 0; m < kNumTms; ++m) r.tm_sse[m] = static_cast<double>(block_sse(block, predict_tm(refs, m)));
    for (const auto& c : candidates) {
      r.nm_sse[c.range] = static_cast<double>(block_sse(block, c.model->predict(ctx)));
    }
    log.push_back(std::move(r));
  }
  return log;
}

DumpResult dump_predictions(const Frame& original, const Frame& recon, int bx, int by, std::span<const ModeId> modes,
                            const ModelRegistry& models, const std::filesystem::path& out_dir) {
  if (bx < 0 || by < 0 || bx >= original.blocks_x() || by >= original.blocks_y()) {
    throw Error("block coordinates out of range: (" + std::to_string(bx) + ", " + std::to_string(by) + ")");
  }
  if (recon.width() != original.width() || recon.height() != original.height()) {
    throw Error("reconstruction does not match the original's dimensions");
  }
  std::filesystem::create_directories(out_dir);
  const std::string stem = "block_" + std::to_string(bx) + "_" + std::to_string(by);
  const RefArray refs = extract_ref_array(recon, bx, by);
  const ReferenceContext ctx = extract_reference_context(recon, bx, by);
  const BlockPredictor predictor(refs, ctx, models);

  DumpResult result;
  result.raw = out_dir / (stem + "_raw.pgm");
  save_pgm(original.block(bx, by), result.raw);

  for (ModeId mode : modes) {
    std::string name = mode.name();
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    const auto path = out_dir / (stem + "_" + name + ".pgm");
    save_pgm(predictor.predict(mode), path);
    result.predictions.push_back(path);
  }

  // 3x3 block mosaic: AL A AR / L [cur] . / BL . .
  Frame mosaic(3 * kBlockSize, 3 * kBlockSize, kMidGray);
  static constexpr std::array<std::pair<int, int>, ReferenceContext::kSlots> kCells = {
      {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}}};
  for (int slot = 0; slot < ReferenceContext::kSlots; ++slot) {
    mosaic.set_block(kCells[slot].first, kCells[slot].second, ctx.blocks[slot]);
  }
  result.context = out_dir / (stem + "_context.pgm");
  save_pgm(mosaic, result.context);
  return result;
}

}  // namespace nnic
