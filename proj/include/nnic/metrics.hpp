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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nnic/frame.hpp"

namespace nnic {

// 10 log10(255^2 / MSE); +infinity for identical frames.
double psnr(const Frame& a, const Frame& b);
std::string format_psnr(double db);  // "inf" for infinity

struct RdPoint {
  double rate = 0.0;  // bits or bits per pixel, > 0
  double psnr = 0.0;  // dB
};

enum class BdInterpolation {
  kAuto,   // cubic fit, monotone piecewise cubic when the fit is ill-conditioned
  kCubic,
  kPchip,
};

// Average rate difference of test against anchor at equal quality, percent
// (negative = savings). Both curves need 4 points with strictly monotonic rate.
double bd_rate(const std::vector<RdPoint>& anchor, const std::vector<RdPoint>& test,
               BdInterpolation interp = BdInterpolation::kAuto);
// Average PSNR difference at equal rate, dB.
double bd_psnr(const std::vector<RdPoint>& anchor, const std::vector<RdPoint>& test,
               BdInterpolation interp = BdInterpolation::kAuto);

// Whitespace-separated "rate psnr" lines; '#' starts a comment.
std::vector<RdPoint> read_rd_curve(std::istream& in);
std::vector<RdPoint> load_rd_curve(const std::filesystem::path& path);

}  // namespace nnic
