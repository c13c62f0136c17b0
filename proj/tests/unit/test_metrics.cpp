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
#include <limits>
#include <sstream>

#include "nnic/error.hpp"
#include "nnic/metrics.hpp"

using namespace nnic;

namespace {

std::vector<RdPoint> curve() { return {{1000, 32.0}, {1700, 34.6}, {2900, 37.1}, {5100, 39.8}}; }

}  // namespace

TEST_CASE("psnr closed forms") {
  Frame a(16, 16, 100), b(16, 16, 101);
  CHECK(std::isinf(psnr(a, a)));
  CHECK(format_psnr(psnr(a, a)) == "inf");
  CHECK(psnr(a, b) == doctest::Approx(10.0 * std::log10(65025.0)));
  CHECK(psnr(a, b) == doctest::Approx(48.13).epsilon(1e-4));
  CHECK(psnr(Frame(8, 8, 0), Frame(8, 8, 255)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(psnr(a, Frame(8, 16)), Error);
}

TEST_CASE("bd metrics on identical and shifted curves") {
  for (auto interp : {BdInterpolation::kAuto, BdInterpolation::kCubic, BdInterpolation::kPchip}) {
    const auto a = curve();
    CHECK(bd_rate(a, a, interp) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(bd_psnr(a, a, interp) == doctest::Approx(0.0).epsilon(1e-9));

    auto up = a;
    for (auto& p : up) p.rate *= 1.10;
    CHECK(std::abs(bd_rate(a, up, interp) - 10.0) < 0.1);

    auto better = a;
    for (auto& p : better) p.psnr += 1.0;
    CHECK(std::abs(bd_psnr(a, better, interp) - 1.0) < 0.01);
  }
}

TEST_CASE("bd rate is antisymmetric for well-conditioned curves") {
  const auto a = curve();
  // Close curves: the percent form is antisymmetric to second order.
  const std::vector<RdPoint> b = {{985, 32.05}, {1690, 34.62}, {2870, 37.15}, {5060, 39.83}};
  CHECK(std::abs(bd_rate(a, b) + bd_rate(b, a)) < 0.05);
  CHECK(bd_rate(a, b) < 0.0);
  CHECK(bd_psnr(a, b) > 0.0);
  // In the log-rate domain it is exact.
  const std::vector<RdPoint> c = {{900, 32.3}, {1600, 34.9}, {2750, 37.3}, {4800, 40.0}};
  CHECK(std::log1p(bd_rate(a, c) / 100) == doctest::Approx(-std::log1p(bd_rate(c, a) / 100)));
}

TEST_CASE("bd metrics reject bad input") {
  auto a = curve();
  CHECK_THROWS_AS(bd_rate(a, {a.begin(), a.begin() + 3}), Error);
  auto flat = a;
  flat[2].rate = flat[1].rate;
  CHECK_THROWS_AS(bd_rate(a, flat), Error);
  auto far = a;
  for (auto& p : far) p.psnr += 50.0;
  CHECK_THROWS_AS(bd_rate(a, far), Error);
  auto neg = a;
  neg[0].rate = -1;
  CHECK_THROWS_AS(bd_rate(neg, a), Error);
}

TEST_CASE("rd curve reader") {
  std::istringstream in("# rate psnr\n1000 32\n1700 34.6\n\n2900 37.1  # qp 27\n5100 39.8\n");
  const auto c = read_rd_curve(in);
  REQUIRE(c.size() == 4);
  CHECK(c[2].rate == 2900);
  CHECK(c[2].psnr == doctest::Approx(37.1));
  std::istringstream bad("1000\n");
  CHECK_THROWS_AS(read_rd_curve(bad), Error);
}
