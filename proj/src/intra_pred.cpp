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

#include "nnic/intra_pred.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>

#include "nnic/error.hpp"

namespace nnic {

namespace {

constexpr int kSmoothingThreshold = 7;  // intraHorVerDistThres for 8x8

// intraPredAngle for modes 2..34.
constexpr std::array<int, 33> kAngleTable = {32,  26,  21,  17,  13,  9,   5,   2,  0,  -2, -5,
                                             -9,  -13, -17, -21, -26, -32, -26, -21, -17, -13, -9,
                                             -5,  -2,  0,   2,   5,   9,   13,  17,  21,  26,  32};

// invAngle = round(8192 / angle) for the negative angles, indexed by -angle.
int inverse_angle(int angle) {
  switch (-angle) {
    case 2: return -4096;
    case 5: return -1638;
    case 9: return -910;
    case 13: return -630;
    case 17: return -482;
    case 21: return -390;
    case 26: return -315;
    case 32: return -256;
    default: return 0;
  }
}

std::uint8_t clip_pixel(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

}  // namespace

bool uses_smoothed_reference(TmId mode) {
  if (mode == kPlanar) return true;
  if (mode == kDc) return false;
  return std::min(std::abs(mode - kTmHor), std::abs(mode - kTmVer)) > kSmoothingThreshold;
}

RefArray smooth_reference(const RefArray& refs, TmId mode) {
  if (!uses_smoothed_reference(mode)) return refs;
  RefArray out = refs;
  for (int i = 1; i < RefArray::kSize - 1; ++i) {
    out.samples[i] = (refs.samples[i - 1] + 2 * refs.samples[i] + refs.samples[i + 1] + 2) >> 2;
  }
  return out;
}

PixelBlock predict_planar(const RefArray& refs) {
  PixelBlock pred;
  const int top_right = refs.top(kBlockSize);
  const int bottom_left = refs.left(kBlockSize);
  for (int y = 0; y < kBlockSize; ++y) {
    for (int x = 0; x < kBlockSize; ++x) {
      const int v = ((kBlockSize - 1 - x) * refs.left(y) + (x + 1) * top_right +
                     (kBlockSize - 1 - y) * refs.top(x) + (y + 1) * bottom_left + kBlockSize) >>
                    4;
      pred.at(x, y) = clip_pixel(v);
    }
  }
  return pred;
}

PixelBlock predict_dc(const RefArray& refs) {
  int sum = kBlockSize;
  for (int i = 0; i < kBlockSize; ++i) sum += refs.top(i) + refs.left(i);
  const int dc = sum >> 4;

  PixelBlock pred = PixelBlock::filled(clip_pixel(dc));
  pred.at(0, 0) = clip_pixel((refs.left(0) + 2 * dc + refs.top(0) + 2) >> 2);
  for (int x = 1; x < kBlockSize; ++x) pred.at(x, 0) = clip_pixel((refs.top(x) + 3 * dc + 2) >> 2);
  for (int y = 1; y < kBlockSize; ++y) pred.at(0, y) = clip_pixel((refs.left(y) + 3 * dc + 2) >> 2);
  return pred;
}

PixelBlock predict_angular(const RefArray& refs, TmId mode) {
  if (!is_angular(mode)) throw Error("angular mode out of range: " + std::to_string(mode));

  const bool vertical = mode >= 18;
  const int angle = kAngleTable[mode - 2];
  constexpr int n = kBlockSize;

  // main_ref(i) runs along the edge the mode projects from, side_ref(i) along
  // the other edge; index 0 is the corner sample for both.
  auto main_ref = [&](int i) { return i == 0 ? refs.corner() : (vertical ? refs.top(i - 1) : refs.left(i - 1)); };
  auto side_ref = [&](int i) { return i == 0 ? refs.corner() : (vertical ? refs.left(i - 1) : refs.top(i - 1)); };

  // ref[k] for k in [-n, 2n], stored at offset n.
  std::array<int, 3 * n + 1> buf{};
  int* ref = buf.data() + n;
  for (int k = 0; k <= 2 * n; ++k) ref[k] = main_ref(k);
  if (angle < 0) {
    const int last = (n * angle) >> 5;
    if (last < -1) {
      const int inv = inverse_angle(angle);
      for (int k = last; k <= -1; ++k) ref[k] = side_ref((k * inv + 128) >> 8);
    }
  }

  // Prediction in main/cross coordinates: u along the main reference, v away from it.
  PixelBlock pred;
  for (int v = 0; v < n; ++v) {
    const int pos = (v + 1) * angle;
    const int idx = pos >> 5;
    const int fact = pos & 31;
    for (int u = 0; u < n; ++u) {
      int value;
      if (fact != 0) {
        value = ((32 - fact) * ref[u + idx + 1] + fact * ref[u + idx + 2] + 16) >> 5;
      } else {
        value = ref[u + idx + 1];
      }
      if (vertical) {
        pred.at(u, v) = clip_pixel(value);
      } else {
        pred.at(v, u) = clip_pixel(value);
      }
    }
  }

  if (mode == kTmVer) {
    for (int y = 0; y < n; ++y) pred.at(0, y) = clip_pixel(refs.top(0) + ((refs.left(y) - refs.corner()) >> 1));
  } else if (mode == kTmHor) {
    for (int x = 0; x < n; ++x) pred.at(x, 0) = clip_pixel(refs.left(0) + ((refs.top(x) - refs.corner()) >> 1));
  }
  return pred;
}

PixelBlock predict_tm(const RefArray& refs, TmId mode) {
  if (!is_valid_tm(mode)) throw Error("traditional mode out of range: " + std::to_string(mode));
  const RefArray filtered = smooth_reference(refs, mode);
  switch (mode) {
    case kPlanar: return predict_planar(filtered);
    case kDc: return predict_dc(filtered);
    default: return predict_angular(filtered, mode);
  }
}

}  // namespace nnic
