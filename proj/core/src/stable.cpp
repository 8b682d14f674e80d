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
#include "hfret/inversion.hpp"

namespace hfret {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

void StableParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::domain_error("StableParams: alpha in (0, 2] required");
  if (!(beta >= -1.0 && beta <= 1.0))
    throw std::domain_error("StableParams: beta in [-1, 1] required");
  if (!(delta > 0.0))
    throw std::domain_error("StableParams: delta > 0 required");
  if (!std::isfinite(mu))
    throw std::domain_error("StableParams: mu must be finite");
}

std::complex<double> stable_cf(const StableParams& p, double t) {
  p.validate();
  if (t == 0.0) return {1.0, 0.0};
  const double adt = std::fabs(p.delta * t);
  double phi;
  if (p.alpha == 1.0)
    phi = -(2.0 / kPi) * std::log(std::fabs(t));
  else
    phi = std::tan(0.5 * kPi * p.alpha);
  const double sgn = (t > 0.0) ? 1.0 : -1.0;
  const double scale = std::pow(adt, p.alpha);
  const std::complex<double> expo(
      -scale, t * p.mu + scale * p.beta * sgn * phi);
  return std::exp(expo);
}

StableDist::StableDist(const StableParams& p, double support_units,
                       std::size_t n_points)
    : p_(p) {
  p_.validate();
  if (p_.alpha == 2.0) {
    gaussian_ = true; // N(mu, 2 delta^2)
    return;
  }

  lo_ = p_.mu - support_units * p_.delta;
  hi_ = p_.mu + support_units * p_.delta;
  InversionGrid grid{lo_, hi_, n_points};
  auto table =
      cf_invert([this](double t) { return stable_cf(p_, t); }, grid);

  // First-order tail asymptote (S1): f(x) ~ alpha c_a (1 +- beta)
  // delta^alpha |x - mu|^-(alpha+1), c_a = sin(pi alpha/2) Gamma(alpha) / pi.
  const double ca =
      std::sin(0.5 * kPi * p_.alpha) * std::tgamma(p_.alpha) / kPi;
  const double da = std::pow(p_.delta, p_.alpha);
  tail_coeff_right_ = p_.alpha * ca * (1.0 + p_.beta) * da;
  tail_coeff_left_ = p_.alpha * ca * (1.0 - p_.beta) * da;
  const double zcut = support_units * p_.delta;
  tail_mass_right_ = ca * (1.0 + p_.beta) * da * std::pow(zcut, -p_.alpha);
  tail_mass_left_ = ca * (1.0 - p_.beta) * da * std::pow(zcut, -p_.alpha);

  const double h = grid.spacing();

  // The DFT periodizes the density with period P = n h, so the power
  // tails wrap back into the window.  Subtract the wrapped contribution
  // estimated from the asymptote; it is smooth in x, so evaluate it on a
  // coarse subgrid and interpolate.
  {
    const double period = static_cast<double>(n_points) * h;
    const double s = p_.alpha + 1.0;
    // sum_{k>=1} (a + kP)^{-s} with Euler-Maclaurin completion
    const auto tail_sum = [&](double a) {
      constexpr int kTerms = 16;
      double sum = 0.0;
      for (int k = 1; k <= kTerms; ++k) sum += std::pow(a + k * period, -s);
      const double edge = a + kTerms * period;
      sum += std::pow(edge, 1.0 - s) / ((s - 1.0) * period);
      sum -= 0.5 * std::pow(edge, -s);
      sum += (s * period / 12.0) * std::pow(edge, -s - 1.0);
      return sum;
    };
    constexpr std::size_t kCoarse = 129;
    std::vector<double> cx(kCoarse), cy(kCoarse);
    for (std::size_t j = 0; j < kCoarse; ++j) {
      const double x = lo_ + (hi_ - lo_) * j / (kCoarse - 1);
      const double a = x - p_.mu;
      cx[j] = x;
      cy[j] = tail_coeff_right_ * tail_sum(a) + tail_coeff_left_ * tail_sum(-a);
    }
    PchipCurve alias(std::move(cx), std::move(cy));
    for (std::size_t j = 0; j < n_points; ++j)
      table.pdf[j] = std::max(table.pdf[j] - alias(table.x[j]), 0.0);
  }

  // Cumulative trapezoid over the table plus the analytic tail masses,
  // normalized so the limits are exactly 0 and 1.
  std::vector<double> cum(n_points);
  cum[0] = tail_mass_left_;
  for (std::size_t j = 1; j < n_points; ++j)
    cum[j] = cum[j - 1] + 0.5 * h * (table.pdf[j - 1] + table.pdf[j]);
  norm_ = cum[n_points - 1] + tail_mass_right_;
  for (auto& c : cum) c /= norm_;

  pdf_curve_ = PchipCurve(table.x, std::move(table.pdf));
  cdf_curve_ = PchipCurve(std::move(table.x), std::move(cum));
}

double StableDist::pdf(double x) const {
  if (gaussian_) {
    const double var = 2.0 * p_.delta * p_.delta;
    const double z = x - p_.mu;
    return std::exp(-z * z / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
  }
  if (x < lo_)
    return tail_coeff_left_ * std::pow(p_.mu - x, -(p_.alpha + 1.0)) / norm_;
  if (x > hi_)
    return tail_coeff_right_ * std::pow(x - p_.mu, -(p_.alpha + 1.0)) / norm_;
  return std::max(pdf_curve_(x), 0.0) / norm_;
}

double StableDist::log_pdf(double x) const {
  const double v = pdf(x);
  return std::log(std::max(v, 1e-300));
}

double StableDist::cdf(double x) const {
  if (gaussian_) {
    const double sd = p_.delta * std::sqrt(2.0);
    return 0.5 * std::erfc(-(x - p_.mu) / (sd * std::sqrt(2.0)));
  }
  if (x <= lo_) {
    const double ca =
        std::sin(0.5 * kPi * p_.alpha) * std::tgamma(p_.alpha) / kPi;
    const double mass = ca * (1.0 - p_.beta) *
                        std::pow(p_.delta, p_.alpha) *
                        std::pow(p_.mu - x, -p_.alpha);
    return std::min(mass / norm_, 1.0);
  }
  if (x >= hi_) {
    const double ca =
        std::sin(0.5 * kPi * p_.alpha) * std::tgamma(p_.alpha) / kPi;
    const double mass = ca * (1.0 + p_.beta) *
                        std::pow(p_.delta, p_.alpha) *
                        std::pow(x - p_.mu, -p_.alpha);
    return std::max(1.0 - mass / norm_, 0.0);
  }
  return std::min(std::max(cdf_curve_(x), 0.0), 1.0);
}

double stable_pdf(const StableParams& p, double x) {
  return StableDist(p).pdf(x);
}

double stable_cdf(const StableParams& p, double x) {
  return StableDist(p).cdf(x);
}

} // namespace hfret
