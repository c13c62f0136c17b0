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
#include <memory>
#include <span>
#include <vector>

#include "nnic/codec.hpp"
#include "nnic/mode_space.hpp"
#include "nnic/network.hpp"

namespace nnic {

// One training pair: the five-block reconstructed context (canonical order,
// raw 8-bit) and the original block, tagged with the anchor's best TM.
struct TrainingSample {
  static constexpr std::size_t kRecordSize = ReferenceContext::kFlatSize + kBlockArea + 1;  // 385

  std::array<std::uint8_t, ReferenceContext::kFlatSize> context{};
  std::array<std::uint8_t, kBlockArea> target{};
  TmId best_tm = 0;

  friend bool operator==(const TrainingSample&, const TrainingSample&) = default;
};

// "NMDS" file: magic, u32 version = 1, u32 block size = 8, u64 count, then
// packed 385-byte records. Integers are little-endian.
inline constexpr std::size_t kDatasetHeaderSize = 20;

std::vector<std::uint8_t> serialize_dataset(std::span<const TrainingSample> samples);
std::vector<TrainingSample> parse_dataset(std::span<const std::uint8_t> bytes);
void write_dataset(std::span<const TrainingSample> samples, const std::filesystem::path& path);
std::vector<TrainingSample> read_dataset(const std::filesystem::path& path);

// Every block of an anchor encoding, no exclusions.
std::vector<TrainingSample> samples_from_encoding(const Frame& original, const EncodeResult& anchor);
std::vector<TrainingSample> collect_training_samples(std::span<const Frame> frames, int qp);
// Returns the number of samples written.
std::size_t extract_dataset(std::span<const Frame> frames, int qp, const std::filesystem::path& out);

// Neural model evaluated against a candidate TM set while gathering statistics.
struct CandidateModel {
  TmRange range;
  std::shared_ptr<const NeuralPredictor> model;
};

// Per-block record of an anchor encoding: best TM, the prediction SSE of every
// TM, and the SSE of each candidate model (all on the encoder's references).
std::vector<ModeLogRecord> collect_mode_log(const Frame& original, const CodecConfig& cfg,
                                            std::span<const CandidateModel> candidates);

struct DumpResult {
  std::filesystem::path raw;
  std::vector<std::filesystem::path> predictions;
  std::filesystem::path context;
};

// Writes the original block, one PGM per requested mode, and the five-block
// context laid out as a 24x24 mosaic (current block position left mid-gray).
DumpResult dump_predictions(const Frame& original, const Frame& recon, int bx, int by, std::span<const ModeId> modes,
                            const ModelRegistry& models, const std::filesystem::path& out_dir);

}  // namespace nnic
