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
#include "hfret/rng.hpp"

namespace hfret {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("Rng::gamma: shape > 0");
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::inverse_gaussian(double m, double l) {
  const double z = normal();
  const double y = z * z;
  const double x = m + m * m * y / (2.0 * l) -
                   m / (2.0 * l) *
                       std::sqrt(4.0 * m * l * y + m * m * y * y);
  return (uniform() <= m / (m + x)) ? x : m * m / x;
}

double Rng::gig(double p, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("Rng::gig: a, b > 0 required");
  const double abs_p = std::fabs(p);
  const double omega = std::sqrt(a * b);
  const double alpha = std::sqrt(omega * omega + abs_p * abs_p) - abs_p;

  auto psi = [&](double x) {
    return -alpha * (std::cosh(x) - 1.0) - abs_p * (std::exp(x) - x - 1.0);
  };
  auto psi_deriv = [&](double x) {
    return -alpha * std::sinh(x) - abs_p * (std::exp(x) - 1.0);
  };

  double t = 1.0, s = 1.0;
  double lc = -psi(1.0);
  if (lc > 2.0)
    t = std::sqrt(2.0 / (alpha + abs_p));
  else if (lc < 0.5)
    t = std::log(4.0 / (alpha + 2.0 * abs_p));
  lc = -psi(-1.0);
  if (lc > 2.0)
    s = std::sqrt(4.0 / (alpha * std::cosh(1.0) + abs_p));
  else if (lc < 0.5)
    s = std::min(1.0 / abs_p,
                 std::log(1.0 + 1.0 / alpha +
                          std::sqrt(1.0 / (alpha * alpha) + 2.0 / alpha)));

  const double eta = -psi(t);
  const double zeta = -psi_deriv(t);
  const double theta = -psi(-s);
  const double xi = psi_deriv(-s);
  const double pp = 1.0 / xi;
  const double r = 1.0 / zeta;
  const double td = t - r * eta;
  const double sd = s - pp * theta;
  const double q = td + sd;

  auto chi = [&](double x) {
    if (x >= -sd && x <= td) return 1.0;
    if (x > td) return std::exp(-eta - zeta * (x - t));
    return std::exp(-theta + xi * (x + s));
  };

  double cand;
  for (;;) {
    const double u = uniform();
    const double v = uniform();
    const double w = uniform();
    if (u < q / (pp + q + r))
      cand = -sd + q * v;
    else if (u < (q + r) / (pp + q + r))
      cand = td - r * std::log(v);
    else
      cand = -sd + pp * std::log(v);
    if (w * chi(cand) <= std::exp(psi(cand))) break;
  }
  cand = (abs_p / omega + std::sqrt(1.0 + abs_p * abs_p / (omega * omega))) *
         std::exp(cand);
  const double root = std::sqrt(b / a);
  return (p > 0.0) ? cand * root : root / cand;
}

namespace {

// Chambers-Mallows-Stuck transformation consistent with the S1-type
// characteristic-function parameterization.
double stable_variate(const StableParams& p, Rng& rng) {
  const double v = rng.uniform(-0.5 * kPi, 0.5 * kPi);
  const double w = rng.exponential();
  if (p.alpha == 2.0) return p.mu + p.delta * std::sqrt(2.0) * rng.normal();
  if (p.alpha == 1.0) {
    const double hp = 0.5 * kPi;
    const double bz = 1.0 + p.beta * v / hp;
    const double z =
        (1.0 / hp) * (bz * hp * std::tan(v) -
                      p.beta * std::log(hp * w * std::cos(v) / (hp * bz)));
    return p.mu + p.delta * z + (2.0 / kPi) * p.beta * p.delta *
                                    std::log(p.delta);
  }
  const double tb = p.beta * std::tan(0.5 * kPi * p.alpha);
  const double b0 = std::atan(tb) / p.alpha;
  const double s0 = std::pow(1.0 + tb * tb, 0.5 / p.alpha);
  const double z =
      s0 * std::sin(p.alpha * (v + b0)) /
      std::pow(std::cos(v), 1.0 / p.alpha) *
      std::pow(std::cos(v - p.alpha * (v + b0)) / w,
               (1.0 - p.alpha) / p.alpha);
  return p.mu + p.delta * z;
}

// Mean-variance Gaussian mixture draw: mu + beta V + sqrt(V) Z.
double gh_variate(double mu, double beta, double mix, Rng& rng) {
  return mu + beta * mix + std::sqrt(mix) * rng.normal();
}

} // namespace

std::vector<double> family_sample(const FamilyParams& params, std::size_t n,
                                  std::uint64_t seed) {
  validate_params(params);
  if (n == 0) throw std::invalid_argument("family_sample: n >= 1 required");
  Rng rng(seed);
  std::vector<double> out(n);

  switch (family_of(params)) {
    case Family::kStable: {
      const auto& p = std::get<StableParams>(params);
      for (auto& v : out) v = stable_variate(p, rng);
      break;
    }
    case Family::kGH: {
      const auto& p = std::get<GHParams>(params);
      const double g = p.gamma();
      for (auto& v : out) {
        const double mix = rng.gig(p.lambda, g * g, p.delta * p.delta);
        v = gh_variate(p.mu, p.beta, mix, rng);
      }
      break;
    }
    case Family::kNIG: {
      const auto& p = std::get<NIGParams>(params);
      const double g = p.gamma();
      for (auto& v : out) {
        const double mix = rng.inverse_gaussian(p.delta / g, p.delta * p.delta);
        v = gh_variate(p.mu, p.beta, mix, rng);
      }
      break;
    }
    case Family::kSkewT: {
      const auto& p = std::get<SkewTParams>(params);
      // GIG boundary psi -> 0: the mixing law is inverse gamma.
      for (auto& v : out) {
        const double mix = 0.5 * p.delta * p.delta / rng.gamma(0.5 * p.nu);
        v = gh_variate(p.mu, p.beta, mix, rng);
      }
      break;
    }
    case Family::kGaussian: {
      const auto& p = std::get<GaussianParams>(params);
      for (auto& v : out) v = p.mu + p.sigma * rng.normal();
      break;
    }
  }
  return out;
}

} // namespace hfret
