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
#include <compare>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nnic/modes.hpp"

namespace nnic {

// Inclusive range of traditional modes [first, last].
struct TmRange {
  TmId first = 0;
  TmId last = 0;

  bool contains(TmId tm) const { return tm >= first && tm <= last; }
  int size() const { return last - first + 1; }
  auto operator<=>(const TmRange&) const = default;
};

std::string to_string(const TmRange& range);  // "[2,18]"

struct NmCategory {
  NmSymbol symbol;
  TmRange range;
};

// TM sets s(i) of an appending scheme, or the replaced TMs of a substitution
// scheme. Neighbouring appending sets may share a boundary TM (18, and 10/26
// for five neural modes); such a TM is a member of both.
struct ModePartition {
  SchemeKind scheme = SchemeKind::kAnchor;
  std::vector<NmCategory> sets;
  int delta1 = 0;
  int delta2 = 0;
  std::vector<SubstitutionSlot> substitution;

  // Every category whose set contains tm.
  std::vector<NmSymbol> categories_of(TmId tm) const;
};

inline constexpr int kMaxDelta = 7;

// delta1/delta2 are only consulted for seven neural modes but must lie in [0, 7].
ModePartition partition_for_scheme(SchemeKind scheme, int delta1 = 0, int delta2 = 0);

// The three delta-dependent sets of one directional class.
enum class DirectionalClass { kHorizontal, kVertical };
std::array<TmRange, 3> directional_sets(DirectionalClass cls, int delta);

// Probability and distortion statistics behind the delta-D objective.
struct CategoryStats {
  std::array<double, kNumTms> p{};    // best-mode frequency per TM
  std::array<double, kNumTms> d_t{};  // mean TM error over blocks whose best mode is that TM
  std::map<TmRange, double> d_n;      // neural error per candidate TM set
  long blocks = 0;

  double probability(const TmRange& range) const;
  // Unweighted mean of d_t over the set.
  double mean_tm_error(const TmRange& range) const;
  // Throws if the set has no neural error entry.
  double nn_error(const TmRange& range) const;
};

struct ModeLogRecord {
  TmId best_tm = 0;
  std::array<double, kNumTms> tm_sse{};
  std::map<TmRange, double> nm_sse;  // neural candidates evaluated on this block
};

CategoryStats collect_mode_stats(const std::vector<ModeLogRecord>& log);

// Sum over sets of P_i * (D^N_i - mean d^T over the set).
double delta_d(const ModePartition& partition, const CategoryStats& stats);
double delta_d_directional(const CategoryStats& stats, DirectionalClass cls, int delta);

struct DeltaSearchResult {
  int delta1 = 0;
  int delta2 = 0;
  double non_directional = 0.0;
  double horizontal = 0.0;
  double vertical = 0.0;
  double total = 0.0;
};

// Independent grid searches over delta1 and delta2; ties go to the smaller delta.
DeltaSearchResult optimize_deltas(const CategoryStats& stats);

// Sum over replaced TMs of p_t * (D^N_t - d^T_t), where D^N_t is keyed by [t, t].
double substitution_objective(const std::vector<TmId>& targets, const CategoryStats& stats);
// The count TMs with the most negative p_t * (D^N_t - d^T_t), ascending by that term.
std::vector<TmId> select_substitution_targets(const CategoryStats& stats, int count);

// Line-oriented key-value report; parse_stats_report reads it back.
void write_stats_report(std::ostream& out, const CategoryStats& stats);
CategoryStats parse_stats_report(std::istream& in);

}  // namespace nnic
