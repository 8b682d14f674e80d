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

#include "hfret/tailfit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hfret/parallel.hpp"

namespace hfret {

const char* tail_side_name(TailSide side) {
  return side == TailSide::kLeft ? "left" : "right";
}

AlphaMle alpha_mle(std::span<const double> tail_data, double x_min) {
  if (tail_data.empty())
    throw std::invalid_argument("alpha_mle: empty tail");
  if (!(x_min > 0.0))
    throw std::invalid_argument("alpha_mle: x_min must be positive");
  double log_sum = 0.0;
  for (double x : tail_data) {
    if (x < x_min)
      throw std::invalid_argument("alpha_mle: data point below x_min");
    log_sum += std::log(x / x_min);
  }
  if (log_sum <= 0.0)
    throw std::invalid_argument(
        "alpha_mle: zero log-sum (all points equal x_min)");
  const double n = static_cast<double>(tail_data.size());
  const double alpha = 1.0 + n / log_sum;
  return AlphaMle{alpha, (alpha - 1.0) / std::sqrt(n)};
}

TailFitReport xmin_scan(std::span<const double> data,
                        const std::optional<std::vector<double>>& candidates,
                        std::size_t n_tail_min) {
  if (data.size() < 100)
    throw std::invalid_argument("xmin_scan: need at least 100 points");
  std::vector<double> sorted;
  sorted.reserve(data.size());
  for (double x : data) {
    if (!(x > 0.0))
      throw std::invalid_argument("xmin_scan: data must be positive");
    sorted.push_back(x);
  }
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> cand;
  if (candidates) {
    cand = *candidates;
    if (!std::is_sorted(cand.begin(), cand.end()))
      throw std::invalid_argument("xmin_scan: candidates must be sorted");
  } else {
    // distinct values from the 75th percentile up to the one leaving
    // n_tail_min points in the tail
    const std::size_t lo = (sorted.size() * 3) / 4;
    if (sorted.size() < n_tail_min + 1)
      throw std::invalid_argument("xmin_scan: not enough data for n_tail_min");
    const std::size_t hi = sorted.size() - n_tail_min;
    for (std::size_t i = lo; i <= hi && i < sorted.size(); ++i) {
      if (cand.empty() || sorted[i] > cand.back()) cand.push_back(sorted[i]);
    }
  }
  if (cand.empty())
    throw std::invalid_argument("xmin_scan: empty candidate set");

  struct Entry {
    double x_min, alpha, ks;
    std::size_t n_tail;
    bool valid;
  };
  std::vector<Entry> entries(cand.size());

  parallel_for(cand.size(), [&](std::size_t c) {
    const double xm = cand[c];
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), xm);
    const std::size_t n_tail = static_cast<std::size_t>(sorted.end() - it);
    Entry e{xm, 0.0, 0.0, n_tail, false};
    if (n_tail >= n_tail_min) {
      double log_sum = 0.0;
      for (auto p = it; p != sorted.end(); ++p) log_sum += std::log(*p / xm);
      if (log_sum > 0.0) {
        const double nn = static_cast<double>(n_tail);
        const double alpha = 1.0 + nn / log_sum;
        // KS against the fitted Pareto CDF 1 - (x/x_min)^{1-alpha}
        double d = 0.0;
        for (std::size_t i = 0; i < n_tail; ++i) {
          const double f = 1.0 - std::pow(*(it + i) / xm, 1.0 - alpha);
          d = std::max(d, std::max((i + 1) / nn - f, f - i / nn));
        }
        e.alpha = alpha;
        e.ks = d;
        e.valid = true;
      }
    }
    entries[c] = e;
  });

  const Entry* best = nullptr;
  for (const Entry& e : entries) {
    if (!e.valid) continue;
    if (!best || e.ks < best->ks) best = &e; // strict <: ties keep smaller xm
  }
  if (!best)
    throw std::invalid_argument(
        "xmin_scan: fewer than n_tail_min points above every candidate");

  TailFitReport r;
  r.side = TailSide::kRight;
  r.alpha = best->alpha;
  r.alpha_std_error =
      (best->alpha - 1.0) / std::sqrt(static_cast<double>(best->n_tail));
  r.x_min = best->x_min;
  r.n_tail = best->n_tail;
  r.ks_at_xmin = best->ks;
  r.standardized_input = true;
  for (const Entry& e : entries)
    if (e.valid) r.scan.push_back({e.x_min, e.alpha, e.ks});
  r.tail_data_.assign(
      std::lower_bound(sorted.begin(), sorted.end(), best->x_min),
      sorted.end());
  return r;
}

TailFitReport tail_fit(const ReturnSeries& series, TailSide side,
                       std::size_t n_tail_min) {
  std::vector<double> tail;
  for (double v : series.values) {
    if (side == TailSide::kRight && v > 0.0) tail.push_back(v);
    if (side == TailSide::kLeft && v < 0.0) tail.push_back(-v);
  }
  if (tail.empty())
    throw std::invalid_argument(std::string("tail_fit: empty ") +
                                tail_side_name(side) + " tail");
  TailFitReport r = xmin_scan(tail, std::nullopt, n_tail_min);
  r.side = side;
  r.standardized_input =
      series.scale_applied != 1.0 || series.loc_applied != 0.0;
  return r;
}

std::vector<std::pair<double, double>> TailFitReport::ccdf() const {
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(tail_data_.size());
  out.reserve(tail_data_.size());
  for (std::size_t i = 0; i < tail_data_.size(); ++i)
    out.emplace_back(tail_data_[i], (n - i) / n);
  return out;
}

nlohmann::json TailFitReport::to_json() const {
  nlohmann::json scan_json = nlohmann::json::array();
  for (const auto& e : scan)
    scan_json.push_back({{"x_min", e.x_min}, {"alpha", e.alpha}, {"ks", e.ks}});
  return {{"side", tail_side_name(side)},
          {"alpha", alpha},
          {"alpha_std_error", alpha_std_error},
          {"x_min", x_min},
          {"n_tail", n_tail},
          {"ks_at_xmin", ks_at_xmin},
          {"standardized_input", standardized_input},
          {"scan", scan_json}};
}

} // namespace hfret
