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

#include "hfret/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "hfret/gof.hpp"
#include "hfret/special_functions.hpp"

namespace hfret {

const char* shuffle_mode_name(ShuffleMode mode) {
  switch (mode) {
    case ShuffleMode::kGlobal: return "global";
    case ShuffleMode::kDayBlock: return "day_block";
    case ShuffleMode::kWithinDaySlot: return "within_day_slot";
  }
  return "?";
}

ReturnSeries aggregate(const ReturnSeries& series, int factor) {
  if (factor < 1) throw std::invalid_argument("aggregate: factor must be >= 1");
  series.check_structure();
  std::size_t max_day = 0;
  for (std::size_t d = 0; d < series.days(); ++d) {
    const auto [b, e] = series.day_range(d);
    max_day = std::max(max_day, e - b);
  }
  if (static_cast<std::size_t>(factor) * 2 > std::max<std::size_t>(max_day, 2))
    throw std::invalid_argument(
        "aggregate: factor exceeds half the day length");
  if (factor == 1) return series;

  ReturnSeries out;
  out.scale_seconds = series.scale_seconds * factor;
  out.loc_applied = series.loc_applied;
  out.scale_applied = series.scale_applied;
  out.deseasonalized = series.deseasonalized;
  for (std::size_t d = 0; d < series.days(); ++d) {
    const auto [b, e] = series.day_range(d);
    const std::size_t blocks = (e - b) / factor;
    if (blocks == 0) continue;
    out.day_offsets.push_back(out.values.size());
    out.day_ids.push_back(series.day_ids[d]);
    out.start_slots.push_back(series.start_slots[d]);
    for (std::size_t k = 0; k < blocks; ++k) {
      double s = 0.0;
      for (int j = 0; j < factor; ++j) s += series.values[b + k * factor + j];
      out.values.push_back(s);
    }
  }
  return out;
}

DfaResult dfa(const ReturnSeries& series) {
  const std::size_t n = series.size();
  if (n < (1u << 10)) throw std::invalid_argument("dfa: need n >= 1024");

  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> profile(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += series.values[i] - mean;
    profile[i] = acc;
  }

  // ~20 log-spaced window sizes in [16, n/4]
  std::vector<std::size_t> windows;
  const double lo = std::log(16.0), hi = std::log(n / 4.0);
  for (int k = 0; k < 20; ++k) {
    const auto s = static_cast<std::size_t>(
        std::lround(std::exp(lo + (hi - lo) * k / 19.0)));
    if (windows.empty() || s > windows.back()) windows.push_back(s);
  }

  DfaResult result;
  std::vector<double> log_s, log_f;
  for (std::size_t s : windows) {
    const std::size_t m = n / s;
    double ss = 0.0;
    std::size_t count = 0;
    // forward and backward passes so trailing samples are covered too
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t w = 0; w < m; ++w) {
        const std::size_t start = pass == 0 ? w * s : n - (w + 1) * s;
        // least-squares line over the window, residual sum of squares
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < s; ++i) {
          const double x = static_cast<double>(i);
          const double y = profile[start + i];
          sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        const double ns = static_cast<double>(s);
        const double denom = ns * sxx - sx * sx;
        const double slope = (ns * sxy - sx * sy) / denom;
        const double icpt = (sy - slope * sx) / ns;
        for (std::size_t i = 0; i < s; ++i) {
          const double r = profile[start + i] - (icpt + slope * i);
          ss += r * r;
        }
        count += s;
      }
    }
    const double f = std::sqrt(ss / static_cast<double>(count));
    if (!(f > 0.0))
      throw std::runtime_error("dfa: zero fluctuation (constant profile)");
    result.fluctuation_curve.emplace_back(static_cast<double>(s), f);
    log_s.push_back(std::log(static_cast<double>(s)));
    log_f.push_back(std::log(f));
  }

  // least-squares slope of log F vs log s
  const double k = static_cast<double>(log_s.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_s.size(); ++i) {
    sx += log_s[i]; sy += log_f[i];
    sxx += log_s[i] * log_s[i]; sxy += log_s[i] * log_f[i];
  }
  result.hurst = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return result;
}

ReturnSeries reshuffle(const ReturnSeries& series, ShuffleMode mode,
                       std::uint64_t seed) {
  series.check_structure();
  std::mt19937_64 gen(seed);
  ReturnSeries out = series;

  switch (mode) {
    case ShuffleMode::kGlobal:
      std::shuffle(out.values.begin(), out.values.end(), gen);
      break;
    case ShuffleMode::kDayBlock: {
      std::vector<std::size_t> order(series.days());
      for (std::size_t d = 0; d < order.size(); ++d) order[d] = d;
      std::shuffle(order.begin(), order.end(), gen);
      // permute whole days; day lengths move with their day, so offsets
      // are rebuilt
      out.values.clear();
      out.day_offsets.clear();
      out.day_ids.clear();
      out.start_slots.clear();
      for (std::size_t d : order) {
        const auto [b, e] = series.day_range(d);
        out.day_offsets.push_back(out.values.size());
        out.day_ids.push_back(series.day_ids[d]);
        out.start_slots.push_back(series.start_slots[d]);
        out.values.insert(out.values.end(), series.values.begin() + b,
                          series.values.begin() + e);
      }
      break;
    }
    case ShuffleMode::kWithinDaySlot: {
      // group positions by time-of-day slot; all days must share the grid
      std::map<std::int64_t, std::vector<std::size_t>> by_slot;
      for (std::size_t d = 0; d < series.days(); ++d) {
        const auto [b, e] = series.day_range(d);
        for (std::size_t i = b; i < e; ++i) {
          const std::int64_t slot =
              series.start_slots[d] + static_cast<std::int64_t>(i - b);
          by_slot[slot].push_back(i);
        }
      }
      // misalignment check: every day must start at the same slot
      for (std::size_t d = 1; d < series.days(); ++d)
        if (series.start_slots[d] != series.start_slots[0])
          throw std::invalid_argument(
              "reshuffle: within_day_slot requires aligned days");
      for (auto& [slot, idx] : by_slot) {
        std::vector<double> vals;
        vals.reserve(idx.size());
        for (std::size_t i : idx) vals.push_back(series.values[i]);
        std::shuffle(vals.begin(), vals.end(), gen);
        for (std::size_t k = 0; k < idx.size(); ++k)
          out.values[idx[k]] = vals[k];
      }
      break;
    }
  }
  return out;
}

namespace {

// KS distance of `sample` against a reference given as a sorted sample
// (two-sample style with the reference treated as the model CDF) or the
// standard normal CDF.
double ks_to_sorted_reference(std::vector<double> sample,
                              const std::vector<double>& ref_sorted) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  const double m = static_cast<double>(ref_sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto it =
        std::upper_bound(ref_sorted.begin(), ref_sorted.end(), sample[i]);
    const double f = static_cast<double>(it - ref_sorted.begin()) / m;
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

double ks_to_normal(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  return ks_stat(sample, [](double x) { return normal_cdf(x); });
}

} // namespace

ScalingReport collapse_scan(const ReturnSeries& series,
                            const std::vector<int>& scales, double hurst,
                            CollapseReference reference) {
  if (scales.empty() || scales.front() < 1 ||
      !std::is_sorted(scales.begin(), scales.end()))
    throw std::invalid_argument("collapse_scan: scales must be increasing");

  ScalingReport r;
  r.scales = scales;
  r.hurst = hurst;
  r.reference = reference;
  r.mode = "raw";

  std::vector<double> base_sorted(series.values.begin(), series.values.end());
  std::sort(base_sorted.begin(), base_sorted.end());

  for (int s : scales) {
    const ReturnSeries agg = aggregate(series, s);
    std::vector<double> rescaled(agg.values);
    const double div = std::pow(static_cast<double>(s), hurst);
    for (double& v : rescaled) v /= div;
    double d;
    if (reference == CollapseReference::kStandardNormal) {
      d = ks_to_normal(std::move(rescaled));
    } else if (s == 1) {
      d = 0.0; // self-comparison
    } else {
      d = ks_to_sorted_reference(std::move(rescaled), base_sorted);
    }
    r.collapse.push_back(d);
    r.critical_05.push_back(ks_critical(agg.size(), 0.05));
    r.critical_01.push_back(ks_critical(agg.size(), 0.01));
  }
  return r;
}

ScalingReport convergence_scan(const ReturnSeries& series,
                               const std::vector<int>& scales) {
  if (scales.empty() || scales.front() < 1 ||
      !std::is_sorted(scales.begin(), scales.end()))
    throw std::invalid_argument("convergence_scan: scales must be increasing");

  ScalingReport r;
  r.scales = scales;
  r.hurst = 0.5;
  r.reference = CollapseReference::kStandardNormal;
  r.mode = "raw";

  for (int s : scales) {
    ReturnSeries agg = aggregate(series, s);
    ReturnSeries std_agg = standardize(agg);
    r.collapse.push_back(ks_to_normal(std_agg.values));
    r.critical_05.push_back(ks_critical(agg.size(), 0.05));
    r.critical_01.push_back(ks_critical(agg.size(), 0.01));
  }
  return r;
}

nlohmann::json ScalingReport::to_json() const {
  nlohmann::json per_scale = nlohmann::json::array();
  for (std::size_t i = 0; i < scales.size(); ++i) {
    per_scale.push_back({{"scale", scales[i]},
                         {"ks", collapse[i]},
                         {"ks_critical_05", critical_05[i]},
                         {"ks_critical_01", critical_01[i]}});
  }
  return {{"hurst", hurst},
          {"reference", reference == CollapseReference::kStandardNormal
                            ? "standard_normal"
                            : "base_scale"},
          {"mode", mode},
          {"scales", per_scale}};
}

} // namespace hfret
