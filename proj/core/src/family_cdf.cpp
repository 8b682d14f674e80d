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

#include <cmath>
#include <stdexcept>

#include "hfret/distributions.hpp"

namespace hfret {

namespace {

// sinh-stretched grid: x = mu + s sinh(w), w in [-W, W].  Covers the whole
// effective support of every GH-family member (power tails included) while
// resolving the density peak at the native scale.
constexpr double kHalfWidth = 50.0;
constexpr std::size_t kIntervals = 1 << 14; // even

} // namespace

FamilyCdf::FamilyCdf(const FamilyParams& params) : params_(params) {
  validate_params(params_);
  const Family fam = family_of(params_);

  if (fam == Family::kGaussian) {
    mode_ = Mode::kClosedForm;
    return;
  }
  if (fam == Family::kStable) {
    mode_ = Mode::kStableTable;
    stable_ = std::make_shared<const StableDist>(
        std::get<StableParams>(params_));
    return;
  }

  mode_ = Mode::kIntegrated;
  std::visit(
      [this](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GHParams> ||
                      std::is_same_v<T, NIGParams> ||
                      std::is_same_v<T, SkewTParams>) {
          mu_ = v.mu;
          scale_ = v.delta;
        }
      },
      params_);

  const std::size_t n = kIntervals + 1;
  const double dw = 2.0 * kHalfWidth / kIntervals;
  std::vector<double> xs(n), f(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = -kHalfWidth + j * dw;
    xs[j] = mu_ + scale_ * std::sinh(w);
    // integrand in w-space: pdf(x(w)) dx/dw
    const double pdf = family_pdf(params_, xs[j]);
    f[j] = pdf * scale_ * std::cosh(w);
  }

  // Cumulative Simpson: even nodes by composite panels, odd nodes by the
  // three-point half-panel rule, then a monotone clamp.
  std::vector<double> cum(n, 0.0);
  for (std::size_t j = 2; j < n; j += 2)
    cum[j] = cum[j - 2] + dw / 3.0 * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
  for (std::size_t j = 1; j < n; j += 2) {
    const double inc = dw / 12.0 * (5.0 * f[j - 1] + 8.0 * f[j] - f[j + 1]);
    cum[j] = cum[j - 1] + std::max(inc, 0.0);
  }
  for (std::size_t j = 1; j < n; ++j) cum[j] = std::max(cum[j], cum[j - 1]);

  const double total = cum.back();
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::runtime_error("FamilyCdf: density integration failed");
  if (std::fabs(total - 1.0) > 1e-3)
    throw std::runtime_error(
        "FamilyCdf: integrated mass deviates from 1 beyond tolerance: " +
        std::to_string(total));
  for (auto& c : cum) c /= total;
  curve_ = PchipCurve(std::move(xs), std::move(cum));
}

double FamilyCdf::operator()(double x) const {
  switch (mode_) {
    case Mode::kClosedForm:
      return gaussian_cdf(std::get<GaussianParams>(params_), x);
    case Mode::kStableTable:
      return stable_->cdf(x);
    case Mode::kIntegrated: {
      if (x <= curve_.x_front()) return 0.0;
      if (x >= curve_.x_back()) return 1.0;
      return std::min(std::max(curve_(x), 0.0), 1.0);
    }
  }
  throw std::logic_error("FamilyCdf: bad mode");
}

std::vector<double> FamilyCdf::at_sorted(const std::vector<double>& xs) const {
  std::vector<double> out(xs.size());
  if (mode_ == Mode::kIntegrated) {
    std::size_t hint = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      out[i] = std::min(std::max(curve_.eval_hinted(xs[i], hint), 0.0), 1.0);
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
  }
  return out;
}

double FamilyCdf::quantile(double prob) const {
  if (!(prob > 0.0 && prob < 1.0))
    throw std::domain_error("FamilyCdf::quantile: prob in (0,1)");
  double lo, hi;
  if (mode_ == Mode::kIntegrated) {
    lo = curve_.x_front();
    hi = curve_.x_back();
  } else {
    lo = -1.0;
    hi = 1.0;
    while ((*this)(lo) > prob) lo *= 2.0;
    while ((*this)(hi) < prob) hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace hfret
