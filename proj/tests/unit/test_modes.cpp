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

#include <doctest.h>

#include <set>

#include "nnic/bitio.hpp"
#include "nnic/error.hpp"
#include "nnic/modes.hpp"

using namespace nnic;

TEST_CASE("scheme names round trip") {
  for (SchemeKind s : kAllSchemes) CHECK(parse_scheme(scheme_name(s)) == s);
  CHECK_FALSE(parse_scheme("app2").has_value());
  CHECK(nm_count(SchemeKind::kAnchor) == 0);
  CHECK(nm_count(SchemeKind::kApp7) == 7);
  CHECK(nm_count(SchemeKind::kSubL3) == 3);
  CHECK(is_appending(SchemeKind::kApp5));
  CHECK(is_substitution(SchemeKind::kSubH1));
  CHECK_FALSE(is_appending(SchemeKind::kAnchor));
}

TEST_CASE("symbol names and classes") {
  CHECK(nm_name(NmSymbol::kNm7Hor1) == "NM7-HOR1");
  CHECK(parse_nm("nm7-hor1") == NmSymbol::kNm7Hor1);
  CHECK(parse_nm("NM3-NA") == NmSymbol::kNm3Na);
  CHECK_FALSE(parse_nm("NM4").has_value());
  CHECK(nm_class(NmSymbol::kNm1) == NmClass::kAll);
  CHECK(nm_class(NmSymbol::kNm5Ver1) == NmClass::kVertical);
  CHECK(nm_class(NmSymbol::kNm7Na) == NmClass::kNonDirectional);
  for (int i = 0; i < kNumNmSymbols; ++i) {
    const auto s = static_cast<NmSymbol>(i);
    CHECK(parse_nm(nm_name(s)) == s);
  }
}

TEST_CASE("scheme symbol sets") {
  for (SchemeKind s : kAllSchemes) {
    CHECK(scheme_symbols(s).size() == static_cast<std::size_t>(nm_count(s)));
    std::set<NmSymbol> unique(scheme_symbols(s).begin(), scheme_symbols(s).end());
    CHECK(unique.size() == scheme_symbols(s).size());
  }
  CHECK(substituted_symbol(SchemeKind::kSubH3, 26) == NmSymbol::kNm3Ver);
  CHECK(substituted_symbol(SchemeKind::kSubL3, 3) == NmSymbol::kNm3Hor);
  CHECK(substituted_symbol(SchemeKind::kSubL1, 19) == NmSymbol::kNm1);
  CHECK_FALSE(substituted_symbol(SchemeKind::kSubL1, 18).has_value());
  CHECK(substitution_index(SchemeKind::kSubH1, NmSymbol::kNm1) == 0);
  CHECK(substitution_index(SchemeKind::kSubL3, NmSymbol::kNm3Ver) == 33);
  CHECK(substitution_slots(SchemeKind::kApp3).empty());
}

TEST_CASE("mode ids order traditional before neural and parse back") {
  CHECK(ModeId::tm(34) < ModeId::nm(NmSymbol::kNm1));
  CHECK(ModeId::tm(3) < ModeId::tm(4));
  CHECK(ModeId::tm(26).name() == "TM26");
  CHECK(parse_mode("tm26") == ModeId::tm(26));
  CHECK(parse_mode("nm7-na") == ModeId::nm(NmSymbol::kNm7Na));
  CHECK_FALSE(parse_mode("tm35").has_value());
  CHECK_FALSE(parse_mode("x").has_value());
}

TEST_CASE("bit writer packs msb first and the reader inverts it") {
  BitWriter w;
  w.put(BinString::from_string("1011"));
  w.put_bits(0x5, 3);
  w.put_bits(0xABCDEF0123ull, 40);
  CHECK(w.bit_count() == 47);
  CHECK(w.bytes()[0] == 0xBB);
  BitReader r(w.bytes(), w.bit_count());
  CHECK(r.get_bits(4) == 0xB);
  CHECK(r.get_bits(3) == 0x5);
  CHECK(r.get_bits(40) == 0xABCDEF0123ull);
  CHECK(r.remaining() == 0);
  CHECK_THROWS_WITH_AS(r.get(), "exhausted bits", Error);
  CHECK(BinString::from_string("0110").starts_with(BinString::from_string("01")));
  CHECK_THROWS_AS(BinString::from_string("012"), Error);
}
