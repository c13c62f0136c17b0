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

#include "nnic/residual.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "nnic/error.hpp"

namespace nnic {

namespace {

constexpr double kDeadzone = 1.0 / 3.0;
constexpr int kMaxGolombPrefix = 31;

std::array<int, kBlockArea> make_zigzag() {
  std::array<int, kBlockArea> order{};
  int i = 0;
  for (int s = 0; s < 2 * kBlockSize - 1; ++s) {
    if (s % 2 == 0) {
      for (int y = std::min(s, kBlockSize - 1); y >= 0 && s - y < kBlockSize; --y) order[i++] = y * kBlockSize + (s - y);
    } else {
      for (int x = std::min(s, kBlockSize - 1); x >= 0 && s - x < kBlockSize; --x) order[i++] = (s - x) * kBlockSize + x;
    }
  }
  return order;
}

// basis[k][n] = c(k) cos((2n + 1) k pi / 16)
const std::array<std::array<double, kBlockSize>, kBlockSize>& dct_basis() {
  static const auto basis = [] {
    std::array<std::array<double, kBlockSize>, kBlockSize> b{};
    for (int k = 0; k < kBlockSize; ++k) {
      const double c = k == 0 ? std::sqrt(1.0 / kBlockSize) : std::sqrt(2.0 / kBlockSize);
      for (int n = 0; n < kBlockSize; ++n) b[k][n] = c * std::cos((2 * n + 1) * k * std::numbers::pi / (2.0 * kBlockSize));
    }
    return b;
  }();
  return basis;
}

// out = M in M^T (forward) or M^T in M (inverse) for the DCT basis M.
CoeffArray separable(const CoeffArray& in, bool inverse) {
  const auto& m = dct_basis();
  auto coef = [&](int a, int b) { return inverse ? m[b][a] : m[a][b]; };
  CoeffArray tmp{};
  CoeffArray out{};
  for (int r = 0; r < kBlockSize; ++r) {
    for (int c = 0; c < kBlockSize; ++c) {
      double s = 0.0;
      for (int k = 0; k < kBlockSize; ++k) s += coef(r, k) * in[k * kBlockSize + c];
      tmp[r * kBlockSize + c] = s;
    }
  }
  for (int r = 0; r < kBlockSize; ++r) {
    for (int c = 0; c < kBlockSize; ++c) {
      double s = 0.0;
      for (int k = 0; k < kBlockSize; ++k) s += tmp[r * kBlockSize + k] * coef(c, k);
      out[r * kBlockSize + c] = s;
    }
  }
  return out;
}

}  // namespace

const std::array<int, kBlockArea> kZigzag = make_zigzag();

CodecConfig CodecConfig::from_qp(int qp) {
  if (qp < 0 || qp > 51) throw Error("qp out of range [0,51]: " + std::to_string(qp));
  CodecConfig cfg;
  cfg.qp = qp;
  cfg.lambda_rd = 0.57 * std::pow(2.0, (qp - 12) / 3.0);
  cfg.lambda_pred = std::sqrt(cfg.lambda_rd);
  cfg.qstep = std::pow(2.0, (qp - 4) / 6.0);
  return cfg;
}

Residual residual_of(const PixelBlock& original, const PixelBlock& prediction) {
  Residual r{};
  for (int i = 0; i < kBlockArea; ++i) r[i] = int{original.values[i]} - int{prediction.values[i]};
  return r;
}

std::int64_t satd8(const Residual& residual) {
  // In-place butterflies give the natural-order Hadamard transform up to a
  // row permutation, which does not change the absolute sum.
  std::array<std::int64_t, kBlockArea> m{};
  for (int i = 0; i < kBlockArea; ++i) m[i] = residual[i];
  auto transform8 = [](std::int64_t* v, int stride) {
    for (int len = 1; len < kBlockSize; len <<= 1) {
      for (int i = 0; i < kBlockSize; i += 2 * len) {
        for (int j = i; j < i + len; ++j) {
          const std::int64_t a = v[j * stride];
          const std::int64_t b = v[(j + len) * stride];
          v[j * stride] = a + b;
          v[(j + len) * stride] = a - b;
        }
      }
    }
  };
  for (int r = 0; r < kBlockSize; ++r) transform8(m.data() + r * kBlockSize, 1);
  for (int c = 0; c < kBlockSize; ++c) transform8(m.data() + c, kBlockSize);
  std::int64_t sum = 0;
  for (auto v : m) sum += std::llabs(v);
  return sum >> 2;
}

CoeffArray dct8(const CoeffArray& block) { return separable(block, false); }
CoeffArray idct8(const CoeffArray& coeffs) { return separable(coeffs, true); }

CoeffBlock quantize(const CoeffArray& coeffs, const CodecConfig& cfg) {
  CoeffBlock out;
  for (int i = 0; i < kBlockArea; ++i) {
    const double c = coeffs[kZigzag[i]];
    const int level = static_cast<int>(std::floor(std::abs(c) / cfg.qstep + kDeadzone));
    out.levels[i] = c < 0 ? -level : level;
  }
  return out;
}

CoeffArray dequantize(const CoeffBlock& levels, const CodecConfig& cfg) {
  CoeffArray out{};
  for (int i = 0; i < kBlockArea; ++i) out[kZigzag[i]] = levels.levels[i] * cfg.qstep;
  return out;
}

namespace {
std::uint32_t golomb_index(int v) {
  return v > 0 ? 2u * static_cast<std::uint32_t>(v) - 1u : 2u * static_cast<std::uint32_t>(-static_cast<long>(v));
}
int bit_width(std::uint32_t v) {
  int n = 0;
  while (v) {
    ++n;
    v >>= 1;
  }
  return n;
}
}  // namespace

int signed_exp_golomb_length(int value) { return 2 * bit_width(golomb_index(value) + 1) - 1; }

void write_signed_exp_golomb(BinString& out, int value) {
  const std::uint32_t code = golomb_index(value) + 1;
  const int width = bit_width(code);
  for (int i = 0; i < width - 1; ++i) out.push(false);
  out.push_bits(code, width);
}

int read_signed_exp_golomb(BitReader& in) {
  int zeros = 0;
  while (!in.get()) {
    if (++zeros > kMaxGolombPrefix) throw Error("malformed Exp-Golomb code");
  }
  const std::uint64_t code = (std::uint64_t{1} << zeros) | in.get_bits(zeros);
  const std::uint64_t k = code - 1;
  return (k & 1u) ? static_cast<int>((k + 1) / 2) : -static_cast<int>(k / 2);
}

BinString code_coeffs(const CoeffBlock& block) {
  BinString out;
  for (int v : block.levels) write_signed_exp_golomb(out, v);
  return out;
}

int coeff_bits(const CoeffBlock& block) {
  int bits = 0;
  for (int v : block.levels) bits += signed_exp_golomb_length(v);
  return bits;
}

CoeffBlock decode_coeffs(BitReader& in) {
  CoeffBlock block;
  try {
    for (int& v : block.levels) v = read_signed_exp_golomb(in);
  } catch (const Error& e) {
    throw Error(std::string("truncated coefficient stream: ") + e.what());
  }
  return block;
}

CoeffBlock decode_coeffs(const BinString& bins) {
  BitReader reader(bins);
  return decode_coeffs(reader);
}

}  // namespace nnic
