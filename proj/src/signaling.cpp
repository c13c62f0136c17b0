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

#include "nnic/signaling.hpp"

#include <algorithm>
#include <string>

#include "nnic/error.hpp"

namespace nnic {

namespace {

constexpr int kRemBins = 5;

std::optional<TmId> substituted_match(TmId pl, std::span<const TmId> substituted) {
  for (TmId tms : substituted) {
    if (pl == tms || pl == tms - 1 || pl == tms + 1) return tms;
  }
  return std::nullopt;
}

BinString anchor_code(TmId tm, const MpmSet& mpm) {
  BinString bins;
  if (const auto idx = mpm.index_of(tm)) {
    bins.push(true);
    if (*idx == 0) {
      bins.push(false);
    } else {
      bins.push(true);
      bins.push(*idx == 2);
    }
    return bins;
  }
  int rank = 0;
  for (TmId m = 0; m < tm; ++m) {
    if (!mpm.index_of(m)) ++rank;
  }
  bins.push(false);
  bins.push_bits(static_cast<std::uint32_t>(rank), kRemBins);
  return bins;
}

TmId decode_anchor(BitReader& bits, const MpmSet& mpm) {
  if (bits.get()) {
    if (!bits.get()) return mpm[0];
    return bits.get() ? mpm[2] : mpm[1];
  }
  int rank = static_cast<int>(bits.get_bits(kRemBins));
  for (TmId m = 0; m < kNumTms; ++m) {
    if (mpm.index_of(m)) continue;
    if (rank-- == 0) return m;
  }
  throw Error("rem_intra_luma_pred_mode out of range");
}

}  // namespace

std::optional<int> MpmSet::index_of(TmId tm) const {
  for (int i = 0; i < 3; ++i) {
    if (modes[i] == tm) return i;
  }
  return std::nullopt;
}

TmId angular_offset(TmId mode, int offset) {
  const int r = ((mode - 2 + offset) % 32 + 32) % 32;
  return 2 + r;
}

MpmSet mpm_baseline(std::optional<TmId> left, std::optional<TmId> above) {
  const TmId l = left.value_or(kDc);
  const TmId a = above.value_or(kDc);
  if (l == a) {
    if (is_angular(l)) return {{l, angular_offset(l, -1), angular_offset(l, 1)}};
    return {{kPlanar, kDc, kTmVer}};
  }
  for (TmId x : {kPlanar, kDc, kTmVer}) {
    if (x != l && x != a) return {{l, a, x}};
  }
  return {};  // unreachable: {l, a} cannot cover three modes
}

MpmSet mpm_substitution_low(std::optional<TmId> left, std::optional<TmId> above, TmId substituted) {
  return mpm_substitution_low(left, above, std::span<const TmId>(&substituted, 1));
}

MpmSet mpm_substitution_low(std::optional<TmId> left, std::optional<TmId> above,
                            std::span<const TmId> substituted) {
  const TmId pl = left.value_or(kDc);
  const TmId pa = above.value_or(kDc);
  if (pl == pa) {
    if (const auto tms = substituted_match(pl, substituted)) {
      if (pl == *tms) return {{pl, kPlanar, kDc}};
      if (pl == *tms - 1) return {{pl, angular_offset(pl, -1), angular_offset(pl, 2)}};
      return {{pl, angular_offset(pl, -2), angular_offset(pl, 1)}};
    }
  }
  return mpm_baseline(left, above);
}

MpmSet derive_mpm(SchemeKind scheme, std::optional<TmId> left, std::optional<TmId> above) {
  if (scheme == SchemeKind::kSubL1 || scheme == SchemeKind::kSubL3) {
    std::vector<TmId> targets;
    for (const auto& slot : substitution_slots(scheme)) targets.push_back(slot.tm);
    return mpm_substitution_low(left, above, targets);
  }
  return mpm_baseline(left, above);
}

bool is_legal(ModeId mode, SchemeKind scheme) {
  if (mode.is_tm()) return is_valid_tm(mode.tm_index()) && !substituted_symbol(scheme, mode.tm_index());
  return scheme_uses(scheme, mode.symbol());
}

std::vector<ModeId> legal_modes(SchemeKind scheme) {
  std::vector<ModeId> modes;
  for (TmId m = 0; m < kNumTms; ++m) {
    if (is_legal(ModeId::tm(m), scheme)) modes.push_back(ModeId::tm(m));
  }
  for (NmSymbol s : scheme_symbols(scheme)) modes.push_back(ModeId::nm(s));
  return modes;
}

BinString nn_mode_bins(NmSymbol symbol) {
  using S = NmSymbol;
  switch (symbol) {
    case S::kNm1: return {};
    case S::kNm3Na:
    case S::kNm5Na:
    case S::kNm7Na: return BinString::from_string("1");
    case S::kNm3Hor: return BinString::from_string("01");
    case S::kNm3Ver: return BinString::from_string("00");
    case S::kNm5Hor0: return BinString::from_string("011");
    case S::kNm5Hor1: return BinString::from_string("010");
    case S::kNm5Ver0: return BinString::from_string("000");
    case S::kNm5Ver1: return BinString::from_string("001");
    case S::kNm7Hor0: return BinString::from_string("0011");
    case S::kNm7Hor1: return BinString::from_string("011");
    case S::kNm7Hor2: return BinString::from_string("0010");
    case S::kNm7Ver0: return BinString::from_string("0000");
    case S::kNm7Ver1: return BinString::from_string("010");
    case S::kNm7Ver2: return BinString::from_string("0001");
  }
  return {};
}

BinString encode_luma_mode(ModeId mode, const MpmSet& mpm, SchemeKind scheme) {
  if (!is_legal(mode, scheme)) {
    throw Error("mode " + mode.name() + " is not legal under scheme " + std::string(scheme_name(scheme)));
  }
  if (is_appending(scheme)) {
    BinString bins;
    if (mode.is_nm()) {
      bins.push(true);
      bins.append(nn_mode_bins(mode.symbol()));
    } else {
      bins.push(false);
      bins.append(anchor_code(mode.tm_index(), mpm));
    }
    return bins;
  }
  const TmId index = mode.is_nm() ? *substitution_index(scheme, mode.symbol()) : mode.tm_index();
  return anchor_code(index, mpm);
}

ModeId decode_luma_mode(BitReader& bits, const MpmSet& mpm, SchemeKind scheme) {
  if (is_appending(scheme)) {
    if (!bits.get()) return ModeId::tm(decode_anchor(bits, mpm));
    const auto symbols = scheme_symbols(scheme);
    BinString prefix;
    while (true) {
      int candidates = 0;
      for (NmSymbol s : symbols) {
        const BinString code = nn_mode_bins(s);
        if (code == prefix) return ModeId::nm(s);
        if (code.starts_with(prefix)) ++candidates;
      }
      if (candidates == 0) throw Error("invalid nn_mode prefix " + prefix.to_string());
      prefix.push(bits.get());
    }
  }
  const TmId index = decode_anchor(bits, mpm);
  if (const auto sym = substituted_symbol(scheme, index)) return ModeId::nm(*sym);
  return ModeId::tm(index);
}

ModeId decode_luma_mode(const BinString& bins, const MpmSet& mpm, SchemeKind scheme) {
  BitReader reader(bins);
  return decode_luma_mode(reader, mpm, scheme);
}

TmId best_tm_for_mpm(ModeId best_nm, const MpmSet& mpm, SchemeKind scheme) {
  if (!best_nm.is_nm()) throw Error("best_tm_for_mpm expects a neural mode, got " + best_nm.name());
  if (const auto slot = substitution_index(scheme, best_nm.symbol()); slot && is_substitution(scheme)) {
    return *slot;
  }
  switch (nm_class(best_nm.symbol())) {
    case NmClass::kAll: return mpm[0];
    case NmClass::kNonDirectional: return kPlanar;
    case NmClass::kHorizontal: return kTmHor;
    case NmClass::kVertical: return kTmVer;
  }
  return kPlanar;
}

ModeId derived_chroma_mode(ModeId best_luma, SchemeKind scheme, TmId mpm0) {
  if (best_luma.is_tm()) return best_luma;
  if (scheme == SchemeKind::kApp1) return ModeId::tm(mpm0);
  return best_luma;
}

std::array<ModeId, 5> chroma_candidates(ModeId derived) {
  std::array<ModeId, 5> list = {ModeId::tm(kPlanar), ModeId::tm(kDc), ModeId::tm(kTmVer), ModeId::tm(kTmHor),
                                derived};
  if (std::find(list.begin(), list.begin() + 4, derived) != list.begin() + 4) list[4] = ModeId::tm(34);
  return list;
}

BinString encode_chroma_index(int index) {
  if (index < 0 || index > 4) throw Error("chroma candidate index out of range");
  if (index == 0) return BinString::from_string("0");
  BinString bins;
  bins.push(true);
  bins.push_bits(static_cast<std::uint32_t>(index - 1), 2);
  return bins;
}

int decode_chroma_index(BitReader& bits) {
  if (!bits.get()) return 0;
  return 1 + static_cast<int>(bits.get_bits(2));
}

}  // namespace nnic
