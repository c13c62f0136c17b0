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
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "nnic/intra_pred.hpp"

namespace nnic {

// How neural modes are combined with the 35 traditional modes.
enum class SchemeKind : std::uint8_t {
  kAnchor = 0,
  kApp1,
  kApp3,
  kApp5,
  kApp7,
  kSubH1,
  kSubH3,
  kSubL1,
  kSubL3,
};

inline constexpr std::array<SchemeKind, 9> kAllSchemes = {
    SchemeKind::kAnchor, SchemeKind::kApp1,  SchemeKind::kApp3,  SchemeKind::kApp5, SchemeKind::kApp7,
    SchemeKind::kSubH1,  SchemeKind::kSubH3, SchemeKind::kSubL1, SchemeKind::kSubL3};

// Number of neural modes N used by the scheme.
int nm_count(SchemeKind scheme);
bool is_appending(SchemeKind scheme);
bool is_substitution(SchemeKind scheme);
std::string_view scheme_name(SchemeKind scheme);
std::optional<SchemeKind> parse_scheme(std::string_view name);

enum class NmSymbol : std::uint8_t {
  kNm1 = 0,
  kNm3Na,
  kNm3Hor,
  kNm3Ver,
  kNm5Na,
  kNm5Hor0,
  kNm5Hor1,
  kNm5Ver0,
  kNm5Ver1,
  kNm7Na,
  kNm7Hor0,
  kNm7Hor1,
  kNm7Hor2,
  kNm7Ver0,
  kNm7Ver1,
  kNm7Ver2,
};
inline constexpr int kNumNmSymbols = 16;

enum class NmClass { kAll, kNonDirectional, kHorizontal, kVertical };

std::string_view nm_name(NmSymbol symbol);  // e.g. "NM7-HOR1"
std::optional<NmSymbol> parse_nm(std::string_view name);  // case-insensitive
NmClass nm_class(NmSymbol symbol);

// Neural modes a scheme needs, in signalling order.
std::span<const NmSymbol> scheme_symbols(SchemeKind scheme);
bool scheme_uses(SchemeKind scheme, NmSymbol symbol);

// Under substitution a neural mode takes over the index of a traditional mode.
struct SubstitutionSlot {
  TmId tm;
  NmSymbol symbol;
};
std::span<const SubstitutionSlot> substitution_slots(SchemeKind scheme);
std::optional<NmSymbol> substituted_symbol(SchemeKind scheme, TmId tm);
std::optional<TmId> substitution_index(SchemeKind scheme, NmSymbol symbol);

// A luma prediction mode: traditional (0..34) or neural. Orders traditional
// modes first by index, then neural modes by symbol.
class ModeId {
 public:
  constexpr ModeId() = default;
  static constexpr ModeId tm(TmId index) { return ModeId(false, index); }
  static constexpr ModeId nm(NmSymbol symbol) { return ModeId(true, static_cast<int>(symbol)); }

  constexpr bool is_nm() const { return neural_; }
  constexpr bool is_tm() const { return !neural_; }
  constexpr TmId tm_index() const { return value_; }
  constexpr NmSymbol symbol() const { return static_cast<NmSymbol>(value_); }

  std::string name() const;  // "TM26" or "NM3-VER"

  constexpr auto operator<=>(const ModeId&) const = default;

 private:
  constexpr ModeId(bool neural, int value) : neural_(neural), value_(value) {}
  bool neural_ = false;
  int value_ = 0;
};

std::optional<ModeId> parse_mode(std::string_view name);  // "tm26", "TM0", "nm7-na"

}  // namespace nnic
