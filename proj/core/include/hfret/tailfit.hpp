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

#ifndef HFRET_TAILFIT_HPP
#define HFRET_TAILFIT_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hfret/ingest.hpp"

namespace hfret {

enum class TailSide { kLeft, kRight };

struct AlphaMle {
  double alpha;      // 1 + n / sum ln(x_i / x_min)
  double std_error;  // (alpha - 1) / sqrt(n)
};

struct TailScanEntry {
  double x_min;
  double alpha;
  double ks;
};

struct TailFitReport {
  TailSide side;
  double alpha;
  double alpha_std_error;
  double x_min;
  std::size_t n_tail;
  double ks_at_xmin;
  std::vector<TailScanEntry> scan;
  bool standardized_input;

  nlohmann::json to_json() const;
  /// (x, empirical complementary CDF) pairs of the analyzed side, for
  /// log-log plots.
  std::vector<std::pair<double, double>> ccdf() const;

 private:
  std::vector<double> tail_data_;
  friend TailFitReport xmin_scan(std::span<const double>,
                                 const std::optional<std::vector<double>>&,
                                 std::size_t);
};

/// Continuous power-law MLE on a fixed tail.
AlphaMle alpha_mle(std::span<const double> tail_data, double x_min);

/// Scan candidate cutoffs, keep the KS-minimizing one (ties -> smallest
/// x_min).  Default candidates: distinct values between the 75th
/// percentile and the point leaving n_tail_min observations.
TailFitReport xmin_scan(
    std::span<const double> data,
    const std::optional<std::vector<double>>& candidates = std::nullopt,
    std::size_t n_tail_min = 50);

/// Right side fits the positive values, left side the negated negatives.
TailFitReport tail_fit(const ReturnSeries& series, TailSide side,
                       std::size_t n_tail_min = 50);

const char* tail_side_name(TailSide side);

} // namespace hfret

#endif // HFRET_TAILFIT_HPP
