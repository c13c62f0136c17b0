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
#include <optional>
#include <span>
#include <vector>

#include "nnic/bitio.hpp"
#include "nnic/modes.hpp"

namespace nnic {

// Three most probable modes. Under substitution an entry equal to a replaced
// TM index stands for the neural mode occupying that slot.
struct MpmSet {
  std::array<TmId, 3> modes{};

  TmId operator[](int i) const { return modes[i]; }
  std::optional<int> index_of(TmId tm) const;
  friend bool operator==(const MpmSet&, const MpmSet&) = default;
};

// Angular neighbour with wraparound inside [2, 34]; 2 + ((mode - 2 + offset) mod 32).
TmId angular_offset(TmId mode, int offset);

// Missing neighbours count as DC.
MpmSet mpm_baseline(std::optional<TmId> left, std::optional<TmId> above);

// MPM generation when low-probability TMs are replaced. Only differs from the
// baseline when left == above and that mode is a replaced TM or adjacent to one.
MpmSet mpm_substitution_low(std::optional<TmId> left, std::optional<TmId> above, TmId substituted);
MpmSet mpm_substitution_low(std::optional<TmId> left, std::optional<TmId> above,
                            std::span<const TmId> substituted);

// MPM rule the scheme uses.
MpmSet derive_mpm(SchemeKind scheme, std::optional<TmId> left, std::optional<TmId> above);

bool is_legal(ModeId mode, SchemeKind scheme);
// Every mode the scheme can code: TMs ascending, then neural modes.
std::vector<ModeId> legal_modes(SchemeKind scheme);

// nn_mode bins of a neural mode (empty for a single neural mode).
BinString nn_mode_bins(NmSymbol symbol);

BinString encode_luma_mode(ModeId mode, const MpmSet& mpm, SchemeKind scheme);
ModeId decode_luma_mode(BitReader& bits, const MpmSet& mpm, SchemeKind scheme);
ModeId decode_luma_mode(const BinString& bits, const MpmSet& mpm, SchemeKind scheme);

// TM standing in for a neural winner when neighbours derive their MPMs.
TmId best_tm_for_mpm(ModeId best_nm, const MpmSet& mpm, SchemeKind scheme);

ModeId derived_chroma_mode(ModeId best_luma, SchemeKind scheme, TmId mpm0);
std::array<ModeId, 5> chroma_candidates(ModeId derived);
// intra_chroma_pred_mode over candidate indices 0..4: 0, 100, 101, 110, 111.
BinString encode_chroma_index(int index);
int decode_chroma_index(BitReader& bits);

}  // namespace nnic
