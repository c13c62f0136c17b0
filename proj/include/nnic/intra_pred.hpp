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

#include "nnic/frame.hpp"

namespace nnic {

using TmId = int;

inline constexpr TmId kPlanar = 0;
inline constexpr TmId kDc = 1;
inline constexpr TmId kTmHor = 10;
inline constexpr TmId kTmVer = 26;
inline constexpr int kNumTms = 35;

constexpr bool is_valid_tm(int m) { return m >= 0 && m < kNumTms; }
constexpr bool is_angular(int m) { return m >= 2 && m < kNumTms; }

// True for the modes whose references get the [1 2 1] filter at 8x8:
// Planar and the three diagonals {2, 18, 34}.
bool uses_smoothed_reference(TmId mode);

RefArray smooth_reference(const RefArray& refs, TmId mode);

PixelBlock predict_planar(const RefArray& refs);
PixelBlock predict_dc(const RefArray& refs);
PixelBlock predict_angular(const RefArray& refs, TmId mode);

// Applies the smoothing rule, then the matching predictor.
PixelBlock predict_tm(const RefArray& refs, TmId mode);

}  // namespace nnic
