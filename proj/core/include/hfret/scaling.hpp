// Copyright 2026 the hfret authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HFRET_SCALING_HPP
#define HFRET_SCALING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hfret/ingest.hpp"

namespace hfret {

enum class ShuffleMode { kGlobal, kDayBlock, kWithinDaySlot };
enum class CollapseReference { kBaseScale, kStandardNormal };

struct DfaResult {
  double hurst;
  std::vector<std::pair<double, double>> fluctuation_curve; // (window, F)
};

struct ScalingReport {
  std::vector<int> scales;
  double hurst;
  std::vector<double> collapse;     // per-scale KS distance
  std::vector<double> critical_05;  // per-scale KS critical values
  std::vector<double> critical_01;
  CollapseReference reference;
  std::string mode; // raw | global_shuffle | day_block_shuffle | slot_shuffle

  nlohmann::json to_json() const;
};

/// Non-overlapping within-day block sums of `factor` consecutive returns;
/// trailing partial blocks are dropped, no block crosses a day boundary.
ReturnSeries aggregate(const ReturnSeries& series, int factor);

/// DFA-1: linear detrending of the mean-centered profile over ~20
/// log-spaced windows in [16, n/4], forward and backward passes averaged.
DfaResult dfa(const ReturnSeries& series);

/// Permutation of the return values; the multiset is preserved exactly
/// and the output is deterministic in the seed.
ReturnSeries reshuffle(const ReturnSeries& series, ShuffleMode mode,
                       std::uint64_t seed);

/// For each scale: aggregate, divide by scale^hurst, KS distance to the
/// reference (base-scale empirical CDF or the standard normal CDF).
ScalingReport collapse_scan(const ReturnSeries& series,
                            const std::vector<int>& scales, double hurst,
                            CollapseReference reference);

/// Like collapse_scan against the normal, but each aggregate is
/// re-standardized first (central-limit convergence check).
ScalingReport convergence_scan(const ReturnSeries& series,
                               const std::vector<int>& scales);

const char* shuffle_mode_name(ShuffleMode mode);

} // namespace hfret

#endif // HFRET_SCALING_HPP
