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

#include <cmath>
#include <numbers>

#include "nnic/error.hpp"
#include "nnic/residual.hpp"
#include "test_support.hpp"

using namespace nnic;
using nnic::testing::SplitMix64;

namespace {

// Direct O(N^4) evaluation of the orthonormal 2-D DCT-II.
CoeffArray naive_dct(const CoeffArray& in) {
  CoeffArray out{};
  const auto c = [](int k) { return k == 0 ? std::sqrt(1.0 / 8) : std::sqrt(2.0 / 8); };
  for (int v = 0; v < 8; ++v)
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
          s += in[y * 8 + x] * std::cos((2 * x + 1) * u * std::numbers::pi / 16) *
               std::cos((2 * y + 1) * v * std::numbers::pi / 16);
      out[v * 8 + u] = c(u) * c(v) * s;
    }
  return out;
}

// Sylvester Hadamard matrix by the bit-parity rule.
int hadamard(int i, int j) { return (__builtin_popcount(static_cast<unsigned>(i & j)) % 2) ? -1 : 1; }

CoeffArray random_coeffs(SplitMix64& rng, double range) {
  CoeffArray a{};
  for (auto& v : a) v = (2.0 * rng.unit() - 1.0) * range;
  return a;
}

}  // namespace

TEST_CASE("codec config derives lambda and qstep from qp") {
  const auto cfg = CodecConfig::from_qp(27);
  CHECK(cfg.qstep == doctest::Approx(std::pow(2.0, 23.0 / 6.0)));
  CHECK(cfg.lambda_rd == doctest::Approx(0.57 * std::pow(2.0, 5.0)));
  CHECK(cfg.lambda_pred == doctest::Approx(std::sqrt(cfg.lambda_rd)));
  CHECK(CodecConfig::from_qp(4).qstep == doctest::Approx(1.0));
  CHECK_THROWS_AS(CodecConfig::from_qp(52), Error);
  CHECK_THROWS_AS(CodecConfig::from_qp(-1), Error);
}

TEST_CASE("zigzag order is a permutation following anti-diagonals") {
  std::array<bool, 64> seen{};
  int prev_diag = 0;
  for (int i = 0; i < kBlockArea; ++i) {
    const int r = kZigzag[i];
    REQUIRE_FALSE(seen[r]);
    seen[r] = true;
    const int diag = r / 8 + r % 8;
    CHECK(diag >= prev_diag);
    prev_diag = diag;
  }
  CHECK(kZigzag[0] == 0);
  CHECK(kZigzag[1] == 1);
  CHECK(kZigzag[2] == 8);
  CHECK(kZigzag[63] == 63);
}

TEST_CASE("satd matches an explicit hadamard transform") {
  SplitMix64 rng(17);
  for (int t = 0; t < 200; ++t) {
    Residual r{};
    for (auto& v : r) v = rng.below(511) - 255;
    std::int64_t sum = 0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        std::int64_t acc = 0;
        for (int y = 0; y < 8; ++y)
          for (int x = 0; x < 8; ++x) acc += hadamard(i, y) * r[y * 8 + x] * hadamard(x, j);
        sum += std::llabs(acc);
      }
    REQUIRE(satd8(r) == (sum >> 2));
  }
  CHECK(satd8(Residual{}) == 0);
}

TEST_CASE("dct matches the direct formula, inverts, and preserves energy") {
  SplitMix64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const CoeffArray x = random_coeffs(rng, 255.0);
    const CoeffArray c = dct8(x);
    const CoeffArray ref = naive_dct(x);
    const CoeffArray back = idct8(c);
    double ex = 0.0, ec = 0.0;
    for (int i = 0; i < kBlockArea; ++i) {
      REQUIRE(c[i] == doctest::Approx(ref[i]).epsilon(1e-9).scale(255.0));
      REQUIRE(std::abs(back[i] - x[i]) < 1e-6);
      ex += x[i] * x[i];
      ec += c[i] * c[i];
    }
    REQUIRE(std::abs(ex - ec) / ex < 1e-6);
  }
}

TEST_CASE("quantizer deadzone rounding and error bound") {
  const auto cfg = CodecConfig::from_qp(4);  // qstep 1
  CoeffArray c{};
  c[0] = 0.66;
  c[1] = 0.67;
  c[8] = -2.7;
  const CoeffBlock q = quantize(c, cfg);
  CHECK(q.levels[0] == 0);
  CHECK(q.levels[1] == 1);
  CHECK(q.levels[2] == -3);

  SplitMix64 rng(31);
  for (int qp : {0, 12, 22, 27, 32, 37, 51}) {
    const auto k = CodecConfig::from_qp(qp);
    for (int t = 0; t < 200; ++t) {
      const CoeffArray x = random_coeffs(rng, 2000.0);
      const CoeffArray d = dequantize(quantize(x, k), k);
      for (int i = 0; i < kBlockArea; ++i) REQUIRE(std::abs(d[i] - x[i]) <= 2.0 / 3.0 * k.qstep + 1e-9);
    }
  }
}

TEST_CASE("signed exp-golomb codes") {
  const std::pair<int, const char*> cases[] = {{0, "1"}, {1, "010"}, {-1, "011"}, {2, "00100"}, {-2, "00101"}};
  for (const auto& [v, bits] : cases) {
    BinString b;
    write_signed_exp_golomb(b, v);
    CHECK(b.to_string() == bits);
    CHECK(signed_exp_golomb_length(v) == static_cast<int>(b.size()));
    BitReader r(b);
    CHECK(read_signed_exp_golomb(r) == v);
  }
  for (int v = -5000; v <= 5000; v += 7) {
    const unsigned k = v > 0 ? 2u * v - 1 : 2u * static_cast<unsigned>(-v);
    CHECK(signed_exp_golomb_length(v) == 2 * static_cast<int>(std::floor(std::log2(k + 1.0))) + 1);
  }
}

TEST_CASE("coefficient code round trip on random blocks") {
  SplitMix64 rng(41);
  for (int t = 0; t < 10000; ++t) {
    CoeffBlock b;
    const int spread = 1 << rng.below(12);
    for (auto& v : b.levels) v = rng.below(4) == 0 ? rng.below(2 * spread + 1) - spread : 0;
    const BinString bins = code_coeffs(b);
    REQUIRE(static_cast<int>(bins.size()) == coeff_bits(b));
    REQUIRE(decode_coeffs(bins) == b);
  }
  CHECK_THROWS_AS(decode_coeffs(BinString::from_string("0001")), Error);
}

TEST_CASE("residual of original and prediction") {
  PixelBlock a = PixelBlock::filled(10), b = PixelBlock::filled(250);
  const Residual r = residual_of(a, b);
  for (int v : r) CHECK(v == -240);
}
