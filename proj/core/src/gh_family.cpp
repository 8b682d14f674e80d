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
#include "hfret/special_functions.hpp"

namespace hfret {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2Pi = 1.8378770664093455;
} // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::kStable: return "stable";
    case Family::kGH: return "gh";
    case Family::kNIG: return "nig";
    case Family::kSkewT: return "skewt";
    case Family::kGaussian: return "gaussian";
  }
  throw std::logic_error("family_name: bad tag");
}

Family family_from_name(const std::string& name) {
  if (name == "stable") return Family::kStable;
  if (name == "gh") return Family::kGH;
  if (name == "nig") return Family::kNIG;
  if (name == "skewt" || name == "skew-t" || name == "student")
    return Family::kSkewT;
  if (name == "gaussian" || name == "normal") return Family::kGaussian;
  throw std::invalid_argument("unknown family: " + name);
}

Family family_of(const FamilyParams& p) {
  return std::visit(
      [](const auto& v) -> Family {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StableParams>) return Family::kStable;
        else if constexpr (std::is_same_v<T, GHParams>) return Family::kGH;
        else if constexpr (std::is_same_v<T, NIGParams>) return Family::kNIG;
        else if constexpr (std::is_same_v<T, SkewTParams>)
          return Family::kSkewT;
        else
          return Family::kGaussian;
      },
      p);
}

void validate_params(const FamilyParams& p) {
  std::visit([](const auto& v) { v.validate(); }, p);
}

double GHParams::gamma() const {
  return std::sqrt(alpha * alpha - beta * beta);
}

void GHParams::validate() const {
  if (!(alpha > 0.0)) throw std::domain_error("GHParams: alpha > 0 required");
  if (!(std::fabs(beta) < alpha))
    throw std::domain_error("GHParams: |beta| < alpha required");
  if (!(delta > 0.0)) throw std::domain_error("GHParams: delta > 0 required");
  if (!std::isfinite(lambda) || !std::isfinite(mu))
    throw std::domain_error("GHParams: non-finite parameter");
}

double NIGParams::gamma() const {
  return std::sqrt(alpha * alpha - beta * beta);
}

void NIGParams::validate() const { as_gh().validate(); }

void SkewTParams::validate() const {
  if (!(nu > 0.0)) throw std::domain_error("SkewTParams: nu > 0 required");
  if (!(delta > 0.0))
    throw std::domain_error("SkewTParams: delta > 0 required");
  if (!std::isfinite(beta) || !std::isfinite(mu))
    throw std::domain_error("SkewTParams: non-finite parameter");
}

void GaussianParams::validate() const {
  if (!(sigma > 0.0))
    throw std::domain_error("GaussianParams: sigma > 0 required");
  if (!std::isfinite(mu))
    throw std::domain_error("GaussianParams: mu must be finite");
}

// ---------------------------------------------------------------------------

double gh_log_pdf(const GHParams& p, double x) {
  p.validate();
  const double g = p.gamma();
  const double z = x - p.mu;
  const double s = std::sqrt(p.delta * p.delta + z * z);
  // All Bessel factors enter through their scaled values so the density
  // stays finite far into the tails.
  const double log_norm = p.lambda * std::log(g / p.delta) -
                          0.5 * kLog2Pi -
                          (log_bessel_k(p.lambda, p.delta * g));
  return log_norm + p.beta * z + log_bessel_k(p.lambda - 0.5, p.alpha * s) -
         (0.5 - p.lambda) * std::log(s / p.alpha);
}

double gh_pdf(const GHParams& p, double x) { return std::exp(gh_log_pdf(p, x)); }

double nig_log_pdf(const NIGParams& p, double x) {
  p.validate();
  const double z = x - p.mu;
  const double s = std::sqrt(p.delta * p.delta + z * z);
  const double as = p.alpha * s;
  return std::log(p.alpha * p.delta) - std::log(kPi) +
         p.delta * p.gamma() + p.beta * z +
         std::log(bessel_k(1.0, as, /*scaled=*/true)) - as - std::log(s);
}

double nig_pdf(const NIGParams& p, double x) {
  return std::exp(nig_log_pdf(p, x));
}

double skewt_log_pdf(const SkewTParams& p, double x) {
  p.validate();
  const double z = x - p.mu;
  const double s2 = p.delta * p.delta + z * z;
  const double s = std::sqrt(s2);
  if (p.beta == 0.0) {
    // Classical Student's t with nu dof and scale delta.
    return log_gamma(0.5 * (p.nu + 1.0)) - log_gamma(0.5 * p.nu) -
           0.5 * std::log(kPi) + p.nu * std::log(p.delta) -
           0.5 * (p.nu + 1.0) * std::log(s2);
  }
  const double ab = std::fabs(p.beta);
  return 0.5 * (1.0 - p.nu) * std::log(2.0) + p.nu * std::log(p.delta) +
         0.5 * (1.0 + p.nu) * std::log(ab) +
         std::log(bessel_k(0.5 * (p.nu + 1.0), ab * s, /*scaled=*/true)) -
         ab * s + p.beta * z - log_gamma(0.5 * p.nu) - 0.5 * std::log(kPi) -
         0.5 * (p.nu + 1.0) * std::log(s);
}

double skewt_pdf(const SkewTParams& p, double x) {
  return std::exp(skewt_log_pdf(p, x));
}

double gaussian_log_pdf(const GaussianParams& p, double x) {
  p.validate();
  const double z = (x - p.mu) / p.sigma;
  return -0.5 * z * z - std::log(p.sigma) - 0.5 * kLog2Pi;
}

double gaussian_pdf(const GaussianParams& p, double x) {
  return std::exp(gaussian_log_pdf(p, x));
}

double gaussian_cdf(const GaussianParams& p, double x) {
  p.validate();
  return normal_cdf((x - p.mu) / p.sigma);
}

double family_log_pdf(const FamilyParams& p, double x) {
  switch (family_of(p)) {
    case Family::kStable:
      return StableDist(std::get<StableParams>(p)).log_pdf(x);
    case Family::kGH: return gh_log_pdf(std::get<GHParams>(p), x);
    case Family::kNIG: return nig_log_pdf(std::get<NIGParams>(p), x);
    case Family::kSkewT: return skewt_log_pdf(std::get<SkewTParams>(p), x);
    case Family::kGaussian:
      return gaussian_log_pdf(std::get<GaussianParams>(p), x);
  }
  throw std::logic_error("family_log_pdf: bad tag");
}

double family_pdf(const FamilyParams& p, double x) {
  return std::exp(family_log_pdf(p, x));
}

} // namespace hfret
