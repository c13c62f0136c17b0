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

#include "nnic/modes.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace nnic {

namespace {

constexpr std::array<std::string_view, 9> kSchemeNames = {"anchor", "app1",  "app3",  "app5", "app7",
                                                          "subh1",  "subh3", "subl1", "subl3"};

constexpr std::array<std::string_view, kNumNmSymbols> kNmNames = {
    "NM1",      "NM3-NA",   "NM3-HOR",  "NM3-VER",  "NM5-NA",   "NM5-HOR0", "NM5-HOR1", "NM5-VER0",
    "NM5-VER1", "NM7-NA",   "NM7-HOR0", "NM7-HOR1", "NM7-HOR2", "NM7-VER0", "NM7-VER1", "NM7-VER2"};

using S = NmSymbol;
constexpr std::array<NmSymbol, 1> kOne = {S::kNm1};
constexpr std::array<NmSymbol, 3> kThree = {S::kNm3Na, S::kNm3Hor, S::kNm3Ver};
constexpr std::array<NmSymbol, 5> kFive = {S::kNm5Na, S::kNm5Hor0, S::kNm5Hor1, S::kNm5Ver0, S::kNm5Ver1};
constexpr std::array<NmSymbol, 7> kSeven = {S::kNm7Na,   S::kNm7Hor0, S::kNm7Hor1, S::kNm7Hor2,
                                            S::kNm7Ver0, S::kNm7Ver1, S::kNm7Ver2};

constexpr std::array<SubstitutionSlot, 1> kSlotsH1 = {{{kPlanar, S::kNm1}}};
constexpr std::array<SubstitutionSlot, 3> kSlotsH3 = {{{kPlanar, S::kNm3Na}, {kDc, S::kNm3Hor}, {kTmVer, S::kNm3Ver}}};
constexpr std::array<SubstitutionSlot, 1> kSlotsL1 = {{{19, S::kNm1}}};
constexpr std::array<SubstitutionSlot, 3> kSlotsL3 = {{{19, S::kNm3Na}, {3, S::kNm3Hor}, {33, S::kNm3Ver}}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

int nm_count(SchemeKind scheme) { return static_cast<int>(scheme_symbols(scheme).size()); }

bool is_appending(SchemeKind scheme) {
  return scheme == SchemeKind::kApp1 || scheme == SchemeKind::kApp3 || scheme == SchemeKind::kApp5 ||
         scheme == SchemeKind::kApp7;
}

bool is_substitution(SchemeKind scheme) {
  return scheme == SchemeKind::kSubH1 || scheme == SchemeKind::kSubH3 || scheme == SchemeKind::kSubL1 ||
         scheme == SchemeKind::kSubL3;
}

std::string_view scheme_name(SchemeKind scheme) { return kSchemeNames[static_cast<int>(scheme)]; }

std::optional<SchemeKind> parse_scheme(std::string_view name) {
  const std::string key = lower(name);
  for (std::size_t i = 0; i < kSchemeNames.size(); ++i) {
    if (kSchemeNames[i] == key) return static_cast<SchemeKind>(i);
  }
  return std::nullopt;
}

std::string_view nm_name(NmSymbol symbol) { return kNmNames[static_cast<int>(symbol)]; }

std::optional<NmSymbol> parse_nm(std::string_view name) {
  const std::string key = lower(name);
  for (int i = 0; i < kNumNmSymbols; ++i) {
    if (lower(kNmNames[i]) == key) return static_cast<NmSymbol>(i);
  }
  return std::nullopt;
}

NmClass nm_class(NmSymbol symbol) {
  switch (symbol) {
    case S::kNm1: return NmClass::kAll;
    case S::kNm3Na:
    case S::kNm5Na:
    case S::kNm7Na: return NmClass::kNonDirectional;
    case S::kNm3Hor:
    case S::kNm5Hor0:
    case S::kNm5Hor1:
    case S::kNm7Hor0:
    case S::kNm7Hor1:
    case S::kNm7Hor2: return NmClass::kHorizontal;
    default: return NmClass::kVertical;
  }
}

std::span<const NmSymbol> scheme_symbols(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::kAnchor: return {};
    case SchemeKind::kApp1:
    case SchemeKind::kSubH1:
    case SchemeKind::kSubL1: return kOne;
    case SchemeKind::kApp3:
    case SchemeKind::kSubH3:
    case SchemeKind::kSubL3: return kThree;
    case SchemeKind::kApp5: return kFive;
    case SchemeKind::kApp7: return kSeven;
  }
  return {};
}

bool scheme_uses(SchemeKind scheme, NmSymbol symbol) {
  const auto symbols = scheme_symbols(scheme);
  return std::find(symbols.begin(), symbols.end(), symbol) != symbols.end();
}

std::span<const SubstitutionSlot> substitution_slots(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::kSubH1: return kSlotsH1;
    case SchemeKind::kSubH3: return kSlotsH3;
    case SchemeKind::kSubL1: return kSlotsL1;
    case SchemeKind::kSubL3: return kSlotsL3;
    default: return {};
  }
}

std::optional<NmSymbol> substituted_symbol(SchemeKind scheme, TmId tm) {
  for (const auto& slot : substitution_slots(scheme)) {
    if (slot.tm == tm) return slot.symbol;
  }
  return std::nullopt;
}

std::optional<TmId> substitution_index(SchemeKind scheme, NmSymbol symbol) {
  for (const auto& slot : substitution_slots(scheme)) {
    if (slot.symbol == symbol) return slot.tm;
  }
  return std::nullopt;
}

std::string ModeId::name() const {
  if (is_nm()) return std::string(nm_name(symbol()));
  return "TM" + std::to_string(tm_index());
}

std::optional<ModeId> parse_mode(std::string_view name) {
  const std::string key = lower(name);
  if (key.size() > 2 && key.rfind("tm", 0) == 0) {
    int v = -1;
    const auto [ptr, ec] = std::from_chars(key.data() + 2, key.data() + key.size(), v);
    if (ec == std::errc() && ptr == key.data() + key.size() && is_valid_tm(v)) return ModeId::tm(v);
    return std::nullopt;
  }
  if (auto sym = parse_nm(key)) return ModeId::nm(*sym);
  return std::nullopt;
}

}  // namespace nnic
