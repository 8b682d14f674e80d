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

#include "hfret/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hfret {

PchipCurve::PchipCurve(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("PchipCurve: need >= 2 matching nodes");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("PchipCurve: x must be strictly increasing");

  std::vector<double> h(n - 1), slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    slope[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  d_[0] = slope[0];
  d_[n - 1] = slope[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (slope[i - 1] * slope[i] <= 0.0) {
      d_[i] = 0.0; // local extremum
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
    }
  }
  // Limit endpoint slopes to keep the interpolant shape-preserving.
  auto limit_end = [](double d, double s) {
    if (d * s <= 0.0) return 0.0;
    return (std::fabs(d) > 3.0 * std::fabs(s)) ? 3.0 * s : d;
  };
  d_[0] = limit_end(d_[0], slope[0]);
  d_[n - 1] = limit_end(d_[n - 1], slope[n - 2]);
}

std::size_t PchipCurve::segment(double x) const {
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double PchipCurve::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  return eval_segment(segment(x), x);
}

double PchipCurve::eval_hinted(double x, std::size_t& hint) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) {
    hint = x_.size() - 2;
    return y_.back();
  }
  while (hint + 2 < x_.size() && x_[hint + 1] <= x) ++hint;
  if (x < x_[hint]) hint = segment(x); // out-of-order query, fall back
  return eval_segment(hint, x);
}

double PchipCurve::eval_segment(std::size_t i, double x) const {
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

} // namespace hfret
