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

#include "nnic/error.hpp"
#include "nnic/frame.hpp"
#include "nnic/intra_pred.hpp"
#include "test_support.hpp"

using namespace nnic;

namespace {

RefArray constant_refs(int v) {
  RefArray r;
  r.samples.fill(v);
  r.available.fill(true);
  return r;
}

RefArray random_refs(std::uint64_t seed) {
  nnic::testing::SplitMix64 rng(seed);
  RefArray r;
  for (auto& s : r.samples) s = static_cast<int>(rng.next() >> 56);
  r.available.fill(true);
  return r;
}

}  // namespace

TEST_CASE("every mode maps constant references to a constant block") {
  for (int v : {0, 1, 77, 128, 254, 255}) {
    for (TmId m = 0; m < kNumTms; ++m) {
      CAPTURE(m);
      CHECK(predict_tm(constant_refs(v), m) == PixelBlock::filled(static_cast<std::uint8_t>(v)));
    }
  }
}

TEST_CASE("vertical mode copies the top run; horizontal mode copies the left run") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const RefArray r = random_refs(seed);
    const PixelBlock ver = predict_tm(r, kTmVer);
    const PixelBlock hor = predict_tm(r, kTmHor);
    for (int y = 0; y < kBlockSize; ++y) {
      for (int x = 0; x < kBlockSize; ++x) {
        if (x >= 1) REQUIRE(ver.at(x, y) == r.top(x));
        if (y >= 1) REQUIRE(hor.at(x, y) == r.left(y));
      }
    }
    // Edge filter on the first column/row.
    for (int y = 0; y < kBlockSize; ++y) {
      const int expect = std::clamp(r.top(0) + ((r.left(y) - r.corner()) >> 1), 0, 255);
      CHECK(ver.at(0, y) == expect);
    }
    for (int x = 0; x < kBlockSize; ++x) {
      const int expect = std::clamp(r.left(0) + ((r.top(x) - r.corner()) >> 1), 0, 255);
      CHECK(hor.at(x, 0) == expect);
    }
  }
}

TEST_CASE("planar reproduces a linear ramp within one") {
  for (int a : {40, 100, 128}) {
    for (int k : {-2, -1, 1, 2}) {
      RefArray r;
      r.available.fill(true);
      const auto f = [&](int x, int y) { return a + k * (x - y); };
      for (int y = 0; y < 2 * kBlockSize; ++y) r.samples[RefArray::kCorner - 1 - y] = f(-1, y);
      for (int x = 0; x < 2 * kBlockSize; ++x) r.samples[RefArray::kCorner + 1 + x] = f(x, -1);
      r.samples[RefArray::kCorner] = f(-1, -1);
      const PixelBlock p = predict_tm(r, kPlanar);
      for (int y = 0; y < kBlockSize; ++y)
        for (int x = 0; x < kBlockSize; ++x) REQUIRE(std::abs(p.at(x, y) - f(x, y)) <= 1);
    }
  }
}

TEST_CASE("dc averages the eight top and eight left samples and filters the boundary") {
  const RefArray r = random_refs(99);
  int sum = 0;
  for (int i = 0; i < kBlockSize; ++i) sum += r.top(i) + r.left(i);
  const int dc = (sum + kBlockSize) >> 4;
  const PixelBlock p = predict_dc(r);
  CHECK(p.at(0, 0) == ((r.left(0) + 2 * dc + r.top(0) + 2) >> 2));
  for (int x = 1; x < kBlockSize; ++x) CHECK(p.at(x, 0) == ((r.top(x) + 3 * dc + 2) >> 2));
  for (int y = 1; y < kBlockSize; ++y) CHECK(p.at(0, y) == ((r.left(y) + 3 * dc + 2) >> 2));
  for (int y = 1; y < kBlockSize; ++y)
    for (int x = 1; x < kBlockSize; ++x) CHECK(p.at(x, y) == dc);
}

TEST_CASE("angular mode m on transposed references is the transpose of mode 36 - m") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RefArray r = random_refs(seed);
    for (TmId m = 2; m <= 34; ++m) {
      CAPTURE(m);
      REQUIRE(predict_tm(r.transposed(), m) == transpose(predict_tm(r, 36 - m)));
    }
  }
}

TEST_CASE("pure diagonal modes copy shifted references") {
  const RefArray r = smooth_reference(random_refs(5), 34);
  const PixelBlock p = predict_angular(r, 34);
  for (int y = 0; y < kBlockSize; ++y)
    for (int x = 0; x < kBlockSize; ++x) REQUIRE(p.at(x, y) == r.top(x + y + 1));
  const RefArray r2 = smooth_reference(random_refs(6), 2);
  const PixelBlock p2 = predict_angular(r2, 2);
  for (int y = 0; y < kBlockSize; ++y)
    for (int x = 0; x < kBlockSize; ++x) REQUIRE(p2.at(x, y) == r2.left(x + y + 1));
}

TEST_CASE("mode 18 propagates the corner along the diagonal") {
  const RefArray r = smooth_reference(random_refs(7), 18);
  const PixelBlock p = predict_angular(r, 18);
  for (int y = 0; y < kBlockSize; ++y) {
    for (int x = 0; x < kBlockSize; ++x) {
      const int d = x - y;
      const int expect = d > 0 ? r.top(d - 1) : d < 0 ? r.left(-d - 1) : r.corner();
      REQUIRE(p.at(x, y) == expect);
    }
  }
}

TEST_CASE("reference smoothing applies only to planar and the diagonals") {
  for (TmId m = 0; m < kNumTms; ++m) CHECK(uses_smoothed_reference(m) == (m == 0 || m == 2 || m == 18 || m == 34));
  const RefArray r = random_refs(3);
  const RefArray s = smooth_reference(r, 0);
  CHECK(s.samples.front() == r.samples.front());
  CHECK(s.samples.back() == r.samples.back());
  for (int i = 1; i + 1 < RefArray::kSize; ++i)
    CHECK(s.samples[i] == ((r.samples[i - 1] + 2 * r.samples[i] + r.samples[i + 1] + 2) >> 2));
  CHECK(smooth_reference(r, 26) == r);
  CHECK_THROWS_AS(predict_angular(r, 1), Error);
  CHECK_THROWS_AS(predict_angular(r, 35), Error);
}
