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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "nnic/codec.hpp"
#include "nnic/dataset.hpp"
#include "nnic/mode_space.hpp"
#include "test_support.hpp"

using namespace nnic;
using namespace nnic::testing;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "nnic");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("encode then decode reproduces the encoder reconstruction") {
  const auto dir = scratch_dir("cli_codec");
  save_pgm(textured_image(1, 64, 48), dir / "in.pgm");
  const auto enc = invoke({"encode", "--scheme", "anchor", "--qp", "27", (dir / "in.pgm").string(),
                           (dir / "out.nnic").string(), "--recon", (dir / "enc.pgm").string(), "--stats",
                           (dir / "stats.txt").string()});
  REQUIRE(enc.code == 0);
  CHECK(enc.out.find("bits=") != std::string::npos);
  CHECK(slurp(dir / "stats.txt").find("total_bits = ") != std::string::npos);
  const auto dec = invoke({"decode", (dir / "out.nnic").string(), (dir / "rec.pgm").string()});
  REQUIRE(dec.code == 0);
  CHECK(slurp(dir / "rec.pgm") == slurp(dir / "enc.pgm"));

  // Identical invocations give identical bytes.
  REQUIRE(invoke({"encode", (dir / "in.pgm").string(), (dir / "again.nnic").string()}).code == 0);
  CHECK(slurp(dir / "again.nnic") == slurp(dir / "out.nnic"));

  REQUIRE(invoke({"encode", (dir / "in.pgm").string(), (dir / "j.nnic").string(), "--stats",
                  (dir / "stats.json").string(), "--stats-format", "json"})
              .code == 0);
  CHECK(slurp(dir / "stats.json").find("\"mode_counts\"") != std::string::npos);
}

TEST_CASE("schemes with neural modes need every model file") {
  const auto dir = scratch_dir("cli_models");
  save_pgm(textured_image(0, 32, 32), dir / "in.pgm");
  auto r = invoke({"encode", "--scheme", "app7", (dir / "in.pgm").string(), (dir / "o.nnic").string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("missing model: NM7-NA") != std::string::npos);

  std::filesystem::create_directories(dir / "models");
  save_weights(splitmix_model(1, {0.25f, 0.25f, 0.25f}), dir / "models" / "nm1.nmwt");
  r = invoke({"encode", "--scheme", "app1", "--models", (dir / "models").string(), (dir / "in.pgm").string(),
              (dir / "o.nnic").string(), "--recon", (dir / "enc.pgm").string()});
  REQUIRE(r.code == 0);
  r = invoke({"decode", "--models", (dir / "models").string(), (dir / "o.nnic").string(), (dir / "dec.pgm").string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "dec.pgm") == slurp(dir / "enc.pgm"));
  r = invoke({"decode", (dir / "o.nnic").string(), (dir / "dec.pgm").string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("missing model: NM1") != std::string::npos);
}

TEST_CASE("argument errors exit nonzero with a diagnostic") {
  CHECK(invoke({}).code != 0);
  CHECK(invoke({"encode", "--scheme", "app2", "a", "b"}).code != 0);
  CHECK(invoke({"encode", "--qp", "60", "a", "b"}).code != 0);
  CHECK(invoke({"frobnicate"}).code != 0);
  const auto r = invoke({"encode", "/nonexistent/in.pgm", "/tmp/x.nnic"});
  CHECK(r.code != 0);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("dataset, analysis and delta search commands") {
  const auto dir = scratch_dir("cli_eval");
  save_pgm(textured_image(0, 32, 32), dir / "a.pgm");
  save_pgm(textured_image(2, 32, 32), dir / "b.pgm");
  auto r = invoke({"extract-dataset", (dir / "d.nmds").string(), (dir / "a.pgm").string(), (dir / "b.pgm").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out == "samples=32\n");
  CHECK(read_dataset(dir / "d.nmds").size() == 32);

  std::filesystem::create_directories(dir / "sets");
  NetworkModel zero = NetworkModel::zeros();
  for (auto& b : zero.layers[3].bias) b = 0.5f;
  for (int d = 0; d <= kMaxDelta; ++d) {
    for (const auto& c : partition_for_scheme(SchemeKind::kApp7, d, d).sets) {
      save_weights(zero, dir / "sets" / ("set-" + std::to_string(c.range.first) + "-" + std::to_string(c.range.last) + ".nmwt"));
    }
  }
  r = invoke({"analyze-modes", "--models", (dir / "sets").string(), (dir / "stats.txt").string(),
              (dir / "a.pgm").string(), (dir / "b.pgm").string()});
  INFO(r.err);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("blocks=32") != std::string::npos);
  std::ifstream stats_in(dir / "stats.txt");
  const CategoryStats stats = parse_stats_report(stats_in);
  CHECK(stats.blocks == 32);

  r = invoke({"optimize-categories", "--targets", "0", (dir / "stats.txt").string()});
  REQUIRE(r.code == 0);
  const auto best = optimize_deltas(stats);
  CHECK(r.out.find("delta1 = " + std::to_string(best.delta1) + "\n") != std::string::npos);
  CHECK(r.out.find("delta2 = " + std::to_string(best.delta2) + "\n") != std::string::npos);
}

TEST_CASE("bdrate and dump-pred commands") {
  const auto dir = scratch_dir("cli_bd");
  {
    std::ofstream a(dir / "a.txt"), t(dir / "t.txt");
    a << "1000 32\n1700 34.6\n2900 37.1\n5100 39.8\n";
    t << "1100 32\n1870 34.6\n3190 37.1\n5610 39.8\n";
  }
  auto r = invoke({"bdrate", (dir / "a.txt").string(), (dir / "t.txt").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("bd_rate = 10") != std::string::npos);

  save_pgm(textured_image(1, 32, 32), dir / "in.pgm");
  std::filesystem::create_directories(dir / "m");
  save_weights(NetworkModel::zeros(), dir / "m" / "nm1.nmwt");
  r = invoke({"dump-pred", (dir / "in.pgm").string(), (dir / "out").string(), "--bx", "1", "--by", "1", "--modes",
              "nm1", "tm0", "--models", (dir / "m").string()});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(dir / "out" / "block_1_1_raw.pgm"));
  CHECK(std::filesystem::exists(dir / "out" / "block_1_1_nm1.pgm"));
  CHECK(std::filesystem::exists(dir / "out" / "block_1_1_tm0.pgm"));
  r = invoke({"dump-pred", (dir / "in.pgm").string(), (dir / "out").string(), "--bx", "9", "--by", "1", "--modes",
              "tm0"});
  CHECK(r.code != 0);
}
