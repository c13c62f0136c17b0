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

#include "nnic/bitio.hpp"
#include "nnic/frame.hpp"

namespace nnic {

using Residual = std::array<int, kBlockArea>;       // row-major
using CoeffArray = std::array<double, kBlockArea>;  // row-major

// 64 quantised levels in zigzag order.
struct CoeffBlock {
  std::array<int, kBlockArea> levels{};
  friend bool operator==(const CoeffBlock&, const CoeffBlock&) = default;
};

// qp in [0, 51]; derived quantities follow from it.
struct CodecConfig {
  int qp = 27;
  double lambda_rd = 0.0;    // 0.57 * 2^((qp - 12) / 3)
  double lambda_pred = 0.0;  // sqrt(lambda_rd)
  double qstep = 0.0;        // 2^((qp - 4) / 6)

  static CodecConfig from_qp(int qp);
};

// Zigzag position -> raster index.
extern const std::array<int, kBlockArea> kZigzag;

Residual residual_of(const PixelBlock& original, const PixelBlock& prediction);

// (sum |H R H^T|) >> 2 with the unnormalised order-8 Hadamard matrix.
std::int64_t satd8(const Residual& residual);

// Separable orthonormal DCT-II and its inverse.
CoeffArray dct8(const CoeffArray& block);
CoeffArray idct8(const CoeffArray& coeffs);

// level = sign(c) * floor(|c| / qstep + 1/3), emitted in zigzag order.
CoeffBlock quantize(const CoeffArray& coeffs, const CodecConfig& cfg);
CoeffArray dequantize(const CoeffBlock& levels, const CodecConfig& cfg);

// Signed order-0 Exp-Golomb per level: v > 0 -> 2v - 1, otherwise -2v.
void write_signed_exp_golomb(BinString& out, int value);
int read_signed_exp_golomb(BitReader& in);
int signed_exp_golomb_length(int value);

BinString code_coeffs(const CoeffBlock& block);
int coeff_bits(const CoeffBlock& block);
CoeffBlock decode_coeffs(BitReader& in);
CoeffBlock decode_coeffs(const BinString& bins);

}  // namespace nnic
