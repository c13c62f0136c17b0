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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "nnic/codec.hpp"
#include "nnic/dataset.hpp"
#include "nnic/error.hpp"
#include "nnic/metrics.hpp"
#include "nnic/mode_space.hpp"
#include "nnic/network.hpp"

namespace nnic::cli {

namespace {

struct InputOptions {
  std::string format = "pgm";
  int width = 0;
  int height = 0;

  Frame load(const std::string& path) const {
    return load_frame(path, format == "raw" ? ImageFormat::kRawY : ImageFormat::kPgm, width, height);
  }
};

void add_input_options(CLI::App& cmd, InputOptions& in) {
  cmd.add_option("--format", in.format, "Input image format")->check(CLI::IsMember({"pgm", "raw"}));
  cmd.add_option("--width", in.width, "Width of raw input");
  cmd.add_option("--height", in.height, "Height of raw input");
}

SchemeKind scheme_from(const std::string& name) {
  const auto s = parse_scheme(name);
  if (!s) throw Error("unknown scheme: " + name);
  return *s;
}

ModelRegistry registry_for(SchemeKind scheme, const std::optional<std::string>& dir) {
  if (!dir) {
    ModelRegistry empty;
    empty.require(scheme);
    return empty;
  }
  return load_registry(*dir, scheme);
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path);
}

std::ofstream open_text(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

nlohmann::ordered_json stats_json(const FrameStats& s, const Frame& f) {
  nlohmann::ordered_json j;
  j["width"] = f.width();
  j["height"] = f.height();
  j["blocks"] = s.blocks;
  j["total_bits"] = s.total_bits;
  j["header_bits"] = s.header_bits;
  j["mode_bits"] = s.mode_bits;
  j["resid_bits"] = s.resid_bits;
  j["bpp"] = s.bits_per_pixel(f);
  j["psnr"] = format_psnr(s.psnr);
  j["rd_cost"] = s.rd_cost;
  j["nm_blocks"] = s.nm_blocks;
  j["nm_ratio"] = s.nm_ratio();
  auto& counts = j["mode_counts"] = nlohmann::ordered_json::object();
  for (const auto& [mode, n] : s.mode_counts) counts[mode.name()] = n;
  return j;
}

// Every TM set a neural model may be evaluated against during analysis.
std::set<TmRange> candidate_ranges() {
  std::set<TmRange> ranges;
  for (SchemeKind s : {SchemeKind::kApp1, SchemeKind::kApp3, SchemeKind::kApp5}) {
    for (const auto& c : partition_for_scheme(s).sets) ranges.insert(c.range);
  }
  for (int d = 0; d <= kMaxDelta; ++d) {
    for (const auto& c : partition_for_scheme(SchemeKind::kApp7, d, d).sets) ranges.insert(c.range);
  }
  for (TmId t = 0; t < kNumTms; ++t) ranges.insert({t, t});
  return ranges;
}

std::string set_file_name(const TmRange& r) {
  return "set-" + std::to_string(r.first) + "-" + std::to_string(r.last) + ".nmwt";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"8x8 intra image codec with neural prediction modes", "nnic"};
  app.require_subcommand(1);

  // encode
  auto* encode = app.add_subcommand("encode", "Encode an image");
  std::string enc_in, enc_out, scheme_name = "anchor", stats_path, stats_format = "kv", recon_path;
  int qp = 27, delta1 = 0, delta2 = 0;
  std::optional<std::string> models_dir;
  InputOptions enc_fmt;
  encode->add_option("input", enc_in, "Input image")->required();
  encode->add_option("output", enc_out, "Output bitstream")->required();
  encode->add_option("--scheme", scheme_name, "Integration scheme")
      ->check(CLI::IsMember({"anchor", "app1", "app3", "app5", "app7", "subh1", "subh3", "subl1", "subl3"}));
  encode->add_option("--qp", qp, "Quantization parameter")->check(CLI::Range(0, 51));
  encode->add_option("--models", models_dir, "Directory of NMWT files");
  encode->add_option("--delta1", delta1, "Horizontal cluster half-width")->check(CLI::Range(0, kMaxDelta));
  encode->add_option("--delta2", delta2, "Vertical cluster half-width")->check(CLI::Range(0, kMaxDelta));
  encode->add_option("--stats", stats_path, "Write a frame statistics report");
  encode->add_option("--stats-format", stats_format, "Report format")->check(CLI::IsMember({"kv", "json"}));
  encode->add_option("--recon", recon_path, "Write the reconstruction as PGM");
  add_input_options(*encode, enc_fmt);

  // decode
  auto* decode = app.add_subcommand("decode", "Decode a bitstream to PGM");
  std::string dec_in, dec_out;
  std::optional<std::string> dec_models;
  decode->add_option("input", dec_in, "Bitstream")->required();
  decode->add_option("output", dec_out, "Output PGM")->required();
  decode->add_option("--models", dec_models, "Directory of NMWT files");

  // extract-dataset
  auto* extract = app.add_subcommand("extract-dataset", "Write NMDS training samples from an anchor encode");
  std::string ds_out;
  std::vector<std::string> ds_inputs;
  int ds_qp = 27;
  InputOptions ds_fmt;
  extract->add_option("output", ds_out, "Output NMDS file")->required();
  extract->add_option("inputs", ds_inputs, "Input images")->required();
  extract->add_option("--qp", ds_qp, "Quantization parameter")->check(CLI::Range(0, 51));
  add_input_options(*extract, ds_fmt);

  // analyze-modes
  auto* analyze = app.add_subcommand("analyze-modes", "Gather TM/NM statistics into a report");
  std::string an_out;
  std::vector<std::string> an_inputs;
  int an_qp = 27;
  std::optional<std::string> an_models;
  InputOptions an_fmt;
  analyze->add_option("output", an_out, "Output stats report")->required();
  analyze->add_option("inputs", an_inputs, "Input images")->required();
  analyze->add_option("--qp", an_qp, "Quantization parameter")->check(CLI::Range(0, 51));
  analyze->add_option("--models", an_models, "Directory of set-<lo>-<hi>.nmwt files");
  add_input_options(*analyze, an_fmt);

  // optimize-categories
  auto* optimize = app.add_subcommand("optimize-categories", "Search delta1/delta2 from a stats report");
  std::string opt_in;
  int opt_targets = 3;
  optimize->add_option("stats", opt_in, "Stats report")->required();
  optimize->add_option("--targets", opt_targets, "Number of substitution targets to list")->check(CLI::Range(0, 35));

  // bdrate
  auto* bdrate = app.add_subcommand("bdrate", "BD-rate and BD-PSNR between two RD curves");
  std::string bd_anchor, bd_test, bd_interp = "auto";
  bdrate->add_option("anchor", bd_anchor, "Anchor curve")->required();
  bdrate->add_option("test", bd_test, "Test curve")->required();
  bdrate->add_option("--interp", bd_interp, "Interpolation")->check(CLI::IsMember({"auto", "cubic", "pchip"}));

  // dump-pred
  auto* dump = app.add_subcommand("dump-pred", "Dump predictions of one block as PGM files");
  std::string dp_in, dp_dir, dp_scheme = "anchor";
  int dp_bx = 0, dp_by = 0, dp_qp = 27;
  std::vector<std::string> dp_modes;
  std::optional<std::string> dp_models;
  InputOptions dp_fmt;
  dump->add_option("input", dp_in, "Input image")->required();
  dump->add_option("outdir", dp_dir, "Output directory")->required();
  dump->add_option("--bx", dp_bx, "Block column")->required();
  dump->add_option("--by", dp_by, "Block row")->required();
  dump->add_option("--modes", dp_modes, "Modes, e.g. tm0 nm1")->required();
  dump->add_option("--scheme", dp_scheme, "Scheme whose models to load for NM requests");
  dump->add_option("--models", dp_models, "Directory of NMWT files");
  dump->add_option("--qp", dp_qp, "Quantization parameter of the anchor encode")->check(CLI::Range(0, 51));
  add_input_options(*dump, dp_fmt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (encode->parsed()) {
      const SchemeKind scheme = scheme_from(scheme_name);
      const ModelRegistry models = registry_for(scheme, models_dir);
      const Frame frame = enc_fmt.load(enc_in);
      const EncodeResult r = encode_frame(frame, scheme, CodecConfig::from_qp(qp), models, delta1, delta2);
      write_bytes(enc_out, r.bitstream);
      if (!recon_path.empty()) save_pgm(r.recon, recon_path);
      if (!stats_path.empty()) {
        auto f = open_text(stats_path);
        if (stats_format == "json") {
          f << stats_json(r.stats, frame).dump(2) << "\n";
        } else {
          write_frame_stats(f, r.stats, frame);
        }
      }
      out << "bits=" << r.stats.total_bits << " psnr=" << format_psnr(r.stats.psnr)
          << " nm_ratio=" << r.stats.nm_ratio() << "\n";
    } else if (decode->parsed()) {
      const auto bytes = read_bytes(dec_in);
      const BitstreamHeader h = parse_header(bytes);
      const ModelRegistry models = registry_for(h.scheme, dec_models);
      save_pgm(decode_frame(bytes, models), dec_out);
    } else if (extract->parsed()) {
      std::vector<Frame> frames;
      for (const auto& p : ds_inputs) frames.push_back(ds_fmt.load(p));
      out << "samples=" << extract_dataset(frames, ds_qp, ds_out) << "\n";
    } else if (analyze->parsed()) {
      std::vector<CandidateModel> candidates;
      if (an_models) {
        for (const TmRange& r : candidate_ranges()) {
          const auto path = std::filesystem::path(*an_models) / set_file_name(r);
          if (std::filesystem::exists(path)) {
            candidates.push_back({r, std::make_shared<const NetworkModel>(load_weights(path))});
          }
        }
      }
      const CodecConfig cfg = CodecConfig::from_qp(an_qp);
      std::vector<ModeLogRecord> log;
      for (const auto& p : an_inputs) {
        auto part = collect_mode_log(an_fmt.load(p), cfg, candidates);
        log.insert(log.end(), part.begin(), part.end());
      }
      auto f = open_text(an_out);
      write_stats_report(f, collect_mode_stats(log));
      out << "blocks=" << log.size() << " neural_sets=" << candidates.size() << "\n";
    } else if (optimize->parsed()) {
      std::ifstream in(opt_in);
      if (!in) throw Error("cannot open " + opt_in);
      const CategoryStats stats = parse_stats_report(in);
      const DeltaSearchResult d = optimize_deltas(stats);
      out << "delta1 = " << d.delta1 << "\n"
          << "delta2 = " << d.delta2 << "\n"
          << "delta_d.non_directional = " << d.non_directional << "\n"
          << "delta_d.horizontal = " << d.horizontal << "\n"
          << "delta_d.vertical = " << d.vertical << "\n"
          << "delta_d.total = " << d.total << "\n";
      if (opt_targets > 0) {
        const auto targets = select_substitution_targets(stats, opt_targets);
        out << "substitution_targets =";
        for (TmId t : targets) out << " " << t;
        out << "\nsubstitution_delta_d = " << substitution_objective(targets, stats) << "\n";
      }
    } else if (bdrate->parsed()) {
      const auto interp = bd_interp == "cubic"   ? BdInterpolation::kCubic
                          : bd_interp == "pchip" ? BdInterpolation::kPchip
                                                 : BdInterpolation::kAuto;
      const auto a = load_rd_curve(bd_anchor);
      const auto t = load_rd_curve(bd_test);
      out << "bd_rate = " << bd_rate(a, t, interp) << "\n";
      out << "bd_psnr = " << bd_psnr(a, t, interp) << "\n";
    } else if (dump->parsed()) {
      std::vector<ModeId> modes;
      bool wants_nm = false;
      for (const auto& m : dp_modes) {
        const auto id = parse_mode(m);
        if (!id) throw Error("unknown mode: " + m);
        wants_nm = wants_nm || id->is_nm();
        modes.push_back(*id);
      }
      const SchemeKind scheme = scheme_from(dp_scheme);
      ModelRegistry models;
      if (wants_nm) {
        if (!dp_models) throw Error("neural modes requested without --models");
        for (ModeId m : modes) {
          if (!m.is_nm()) continue;
          const auto path = std::filesystem::path(*dp_models) / model_file_name(m.symbol());
          if (!std::filesystem::exists(path)) throw Error("missing model: " + std::string(nm_name(m.symbol())));
          models.set(m.symbol(), std::make_shared<const NetworkModel>(load_weights(path)));
        }
      }
      const Frame frame = dp_fmt.load(dp_in);
      // The context is the reconstruction of the scheme named on the command line.
      ModelRegistry enc_models = scheme == SchemeKind::kAnchor ? ModelRegistry{} : registry_for(scheme, dp_models);
      const EncodeResult enc = encode_frame(frame, scheme, CodecConfig::from_qp(dp_qp), enc_models);
      const DumpResult d = dump_predictions(frame, enc.recon, dp_bx, dp_by, modes, models, dp_dir);
      out << d.raw.string() << "\n";
      for (const auto& p : d.predictions) out << p.string() << "\n";
      out << d.context.string() << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace nnic::cli
