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

#include "nnic/mode_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "nnic/error.hpp"

namespace nnic {

namespace {

constexpr TmRange kNonDirectional{0, 1};

void check_delta(int delta) {
  if (delta < 0 || delta > kMaxDelta) throw Error("delta out of range [0,7]: " + std::to_string(delta));
}

}  // namespace

std::string to_string(const TmRange& range) {
  return "[" + std::to_string(range.first) + "," + std::to_string(range.last) + "]";
}

std::vector<NmSymbol> ModePartition::categories_of(TmId tm) const {
  std::vector<NmSymbol> out;
  for (const auto& c : sets) {
    if (c.range.contains(tm)) out.push_back(c.symbol);
  }
  return out;
}

std::array<TmRange, 3> directional_sets(DirectionalClass cls, int delta) {
  check_delta(delta);
  if (cls == DirectionalClass::kHorizontal) {
    return {TmRange{2, 9 - delta}, TmRange{10 - delta, 10 + delta}, TmRange{11 + delta, 18}};
  }
  return {TmRange{18, 25 - delta}, TmRange{26 - delta, 26 + delta}, TmRange{27 + delta, 34}};
}

ModePartition partition_for_scheme(SchemeKind scheme, int delta1, int delta2) {
  check_delta(delta1);
  check_delta(delta2);
  using S = NmSymbol;
  ModePartition p;
  p.scheme = scheme;
  switch (scheme) {
    case SchemeKind::kAnchor: break;
    case SchemeKind::kApp1: p.sets = {{S::kNm1, {0, 34}}}; break;
    case SchemeKind::kApp3:
      p.sets = {{S::kNm3Na, kNonDirectional}, {S::kNm3Hor, {2, 18}}, {S::kNm3Ver, {18, 34}}};
      break;
    case SchemeKind::kApp5:
      p.sets = {{S::kNm5Na, kNonDirectional},
                {S::kNm5Hor0, {2, 10}},
                {S::kNm5Hor1, {10, 18}},
                {S::kNm5Ver0, {18, 26}},
                {S::kNm5Ver1, {26, 34}}};
      break;
    case SchemeKind::kApp7: {
      p.delta1 = delta1;
      p.delta2 = delta2;
      const auto hor = directional_sets(DirectionalClass::kHorizontal, delta1);
      const auto ver = directional_sets(DirectionalClass::kVertical, delta2);
      p.sets = {{S::kNm7Na, kNonDirectional}, {S::kNm7Hor0, hor[0]}, {S::kNm7Hor1, hor[1]},
                {S::kNm7Hor2, hor[2]},        {S::kNm7Ver0, ver[0]}, {S::kNm7Ver1, ver[1]},
                {S::kNm7Ver2, ver[2]}};
      break;
    }
    case SchemeKind::kSubH1:
    case SchemeKind::kSubH3:
    case SchemeKind::kSubL1:
    case SchemeKind::kSubL3: {
      const auto slots = substitution_slots(scheme);
      p.substitution.assign(slots.begin(), slots.end());
      break;
    }
  }
  return p;
}

double CategoryStats::probability(const TmRange& range) const {
  double s = 0.0;
  for (TmId j = range.first; j <= range.last; ++j) s += p[j];
  return s;
}

double CategoryStats::mean_tm_error(const TmRange& range) const {
  double s = 0.0;
  for (TmId j = range.first; j <= range.last; ++j) s += d_t[j];
  return s / range.size();
}

double CategoryStats::nn_error(const TmRange& range) const {
  const auto it = d_n.find(range);
  if (it == d_n.end()) throw Error("missing neural error for TM set " + to_string(range));
  return it->second;
}

CategoryStats collect_mode_stats(const std::vector<ModeLogRecord>& log) {
  if (log.empty()) throw Error("mode log is empty");
  CategoryStats stats;
  std::array<long, kNumTms> count{};
  std::array<double, kNumTms> tm_sum{};
  std::map<TmRange, std::pair<double, long>> nm_sum;

  for (const auto& rec : log) {
    if (!is_valid_tm(rec.best_tm)) throw Error("mode log record has invalid best TM");
    ++count[rec.best_tm];
    tm_sum[rec.best_tm] += rec.tm_sse[rec.best_tm];
    for (const auto& [range, sse] : rec.nm_sse) {
      auto& acc = nm_sum[range];
      if (!range.contains(rec.best_tm)) continue;
      acc.first += sse;
      ++acc.second;
    }
  }

  stats.blocks = static_cast<long>(log.size());
  for (int j = 0; j < kNumTms; ++j) {
    stats.p[j] = static_cast<double>(count[j]) / static_cast<double>(log.size());
    stats.d_t[j] = count[j] ? tm_sum[j] / static_cast<double>(count[j]) : 0.0;
  }
  // A set no block fell into has P = 0; its error is recorded as 0.
  for (const auto& [range, acc] : nm_sum) {
    stats.d_n[range] = acc.second ? acc.first / static_cast<double>(acc.second) : 0.0;
  }
  return stats;
}

double delta_d(const ModePartition& partition, const CategoryStats& stats) {
  if (!partition.substitution.empty()) {
    std::vector<TmId> targets;
    for (const auto& slot : partition.substitution) targets.push_back(slot.tm);
    return substitution_objective(targets, stats);
  }
  double total = 0.0;
  for (const auto& c : partition.sets) {
    total += stats.probability(c.range) * (stats.nn_error(c.range) - stats.mean_tm_error(c.range));
  }
  return total;
}

double delta_d_directional(const CategoryStats& stats, DirectionalClass cls, int delta) {
  double total = 0.0;
  for (const TmRange& r : directional_sets(cls, delta)) {
    total += stats.probability(r) * (stats.nn_error(r) - stats.mean_tm_error(r));
  }
  return total;
}

DeltaSearchResult optimize_deltas(const CategoryStats& stats) {
  DeltaSearchResult best;
  best.non_directional =
      stats.probability(kNonDirectional) * (stats.nn_error(kNonDirectional) - stats.mean_tm_error(kNonDirectional));

  auto search = [&](DirectionalClass cls, int& arg, double& value) {
    value = std::numeric_limits<double>::infinity();
    for (int d = 0; d <= kMaxDelta; ++d) {
      const double v = delta_d_directional(stats, cls, d);
      if (v < value) {
        value = v;
        arg = d;
      }
    }
  };
  search(DirectionalClass::kHorizontal, best.delta1, best.horizontal);
  search(DirectionalClass::kVertical, best.delta2, best.vertical);
  best.total = best.non_directional + best.horizontal + best.vertical;
  return best;
}

double substitution_objective(const std::vector<TmId>& targets, const CategoryStats& stats) {
  std::vector<TmId> seen;
  double total = 0.0;
  for (TmId t : targets) {
    if (!is_valid_tm(t)) throw Error("substitution target out of range");
    if (std::find(seen.begin(), seen.end(), t) != seen.end()) throw Error("substitution targets must be distinct");
    seen.push_back(t);
    total += stats.p[t] * (stats.nn_error({t, t}) - stats.d_t[t]);
  }
  return total;
}

std::vector<TmId> select_substitution_targets(const CategoryStats& stats, int count) {
  std::vector<std::pair<double, TmId>> terms;
  for (TmId t = 0; t < kNumTms; ++t) {
    if (stats.d_n.count({t, t})) terms.emplace_back(stats.p[t] * (stats.nn_error({t, t}) - stats.d_t[t]), t);
  }
  if (static_cast<int>(terms.size()) < count) throw Error("not enough per-TM neural errors to select targets");
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<TmId> out;
  for (int i = 0; i < count; ++i) out.push_back(terms[i].second);
  return out;
}

void write_stats_report(std::ostream& out, const CategoryStats& stats) {
  const auto old_precision = out.precision(17);
  out << "blocks = " << stats.blocks << "\n";
  out << "p_nondirectional = " << stats.probability(kNonDirectional) << "\n";
  for (int j = 0; j < kNumTms; ++j) out << "p[" << j << "] = " << stats.p[j] << "\n";
  for (int j = 0; j < kNumTms; ++j) out << "d_t[" << j << "] = " << stats.d_t[j] << "\n";
  for (const auto& [range, v] : stats.d_n) out << "d_n" << to_string(range) << " = " << v << "\n";
  out.precision(old_precision);
}

CategoryStats parse_stats_report(std::istream& in) {
  CategoryStats stats;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error("stats report line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    double value = 0.0;
    std::istringstream vs(line.substr(eq + 1));
    if (!(vs >> value)) fail("bad value");

    int a = 0, b = 0;
    char tail = 0;
    if (key == "blocks") {
      stats.blocks = static_cast<long>(value);
    } else if (key == "p_nondirectional") {
      // derived; recomputed from p[]
    } else if (std::sscanf(key.c_str(), "p[%d%c", &a, &tail) == 2 && tail == ']') {
      if (!is_valid_tm(a)) fail("TM index out of range");
      stats.p[a] = value;
    } else if (std::sscanf(key.c_str(), "d_t[%d%c", &a, &tail) == 2 && tail == ']') {
      if (!is_valid_tm(a)) fail("TM index out of range");
      stats.d_t[a] = value;
    } else if (std::sscanf(key.c_str(), "d_n[%d,%d%c", &a, &b, &tail) == 3 && tail == ']') {
      if (!is_valid_tm(a) || !is_valid_tm(b) || a > b) fail("bad TM set");
      stats.d_n[{a, b}] = value;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  const double sum = std::accumulate(stats.p.begin(), stats.p.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) throw Error("stats report: probabilities do not sum to 1");
  return stats;
}

}  // namespace nnic
