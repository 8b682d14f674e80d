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

#ifndef HFRET_DISTRIBUTIONS_HPP
#define HFRET_DISTRIBUTIONS_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hfret/interpolation.hpp"

namespace hfret {

enum class Family { kStable, kGH, kNIG, kSkewT, kGaussian };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Parameter vectors

struct StableParams {
  double alpha; // characteristic exponent, (0, 2]
  double beta;  // skewness, [-1, 1]
  double delta; // scale, > 0
  double mu;    // location

  void validate() const;
};

struct GHParams {
  double lambda; // subclass index
  double alpha;  // shape, > 0
  double beta;   // skewness, |beta| < alpha
  double delta;  // scale, > 0
  double mu;     // location

  double gamma() const; // sqrt(alpha^2 - beta^2)
  void validate() const;
};

struct NIGParams {
  double alpha;
  double beta;
  double delta;
  double mu;

  double gamma() const;
  void validate() const;
  GHParams as_gh() const { return {-0.5, alpha, beta, delta, mu}; }
};

struct SkewTParams {
  double nu;    // degrees of freedom, > 0
  double beta;  // asymmetry
  double delta; // scale, > 0
  double mu;    // location

  void validate() const;
};

struct GaussianParams {
  double mu;
  double sigma; // > 0

  void validate() const;
};

using FamilyParams = std::variant<StableParams, GHParams, NIGParams,
                                  SkewTParams, GaussianParams>;

Family family_of(const FamilyParams& p);
void validate_params(const FamilyParams& p);

// ---------------------------------------------------------------------------
// Stable law

/// Characteristic function exp[it mu - |delta t|^alpha (1 - i beta sgn(t) Phi)]
/// with Phi = tan(pi alpha / 2) for alpha != 1 and -(2/pi) log|t| at alpha = 1.
std::complex<double> stable_cf(const StableParams& p, double t);

/// Stable density/CDF backed by one FFT inversion table per parameter
/// vector.  Immutable after construction; shareable across threads.
/// alpha = 2 dispatches to the exact Gaussian closed form.
class StableDist {
 public:
  /// support_units: half-width of the tabulated range in units of delta;
  /// beyond it the first-order power-law tail asymptote is used.
  explicit StableDist(const StableParams& p, double support_units = 32.0,
                      std::size_t n_points = 1 << 16);

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  const StableParams& params() const { return p_; }

 private:
  StableParams p_;
  bool gaussian_ = false; // alpha == 2 closed form
  double lo_ = 0.0, hi_ = 0.0;
  double tail_coeff_left_ = 0.0, tail_coeff_right_ = 0.0; // pdf asymptote
  double tail_mass_left_ = 0.0, tail_mass_right_ = 0.0;
  double norm_ = 1.0;
  PchipCurve pdf_curve_;
  PchipCurve cdf_curve_;
};

double stable_pdf(const StableParams& p, double x);
double stable_cdf(const StableParams& p, double x);

// ---------------------------------------------------------------------------
// Generalized Hyperbolic family and Gaussian

double gh_log_pdf(const GHParams& p, double x);
double gh_pdf(const GHParams& p, double x);

double nig_log_pdf(const NIGParams& p, double x);
double nig_pdf(const NIGParams& p, double x);

double skewt_log_pdf(const SkewTParams& p, double x);
double skewt_pdf(const SkewTParams& p, double x);

double gaussian_log_pdf(const GaussianParams& p, double x);
double gaussian_pdf(const GaussianParams& p, double x);
double gaussian_cdf(const GaussianParams& p, double x);

double family_pdf(const FamilyParams& p, double x);
double family_log_pdf(const FamilyParams& p, double x);

// ---------------------------------------------------------------------------
// Cached distribution functions

/// Monotone cached CDF for any family.  GH-family members are integrated
/// once on a sinh-stretched grid; stable laws use the inversion table;
/// the Gaussian is closed-form.  Built once per parameter vector, then
/// read-only.
class FamilyCdf {
 public:
  explicit FamilyCdf(const FamilyParams& params);

  double operator()(double x) const;

  /// Batch evaluation at sorted points (O(n + grid) for cached families).
  std::vector<double> at_sorted(const std::vector<double>& xs) const;

  /// Quantile by bisection on the cached curve.
  double quantile(double prob) const;

 private:
  FamilyParams params_;
  enum class Mode { kClosedForm, kStableTable, kIntegrated } mode_;
  std::shared_ptr<const StableDist> stable_;
  PchipCurve curve_; // cdf values on the stretched grid (kIntegrated)
  double mu_ = 0.0, scale_ = 1.0;
};

// ---------------------------------------------------------------------------
// Sampling

/// Deterministic sampler: n variates from the family given a seed.
/// GH/NIG/skew-t are drawn as mu + beta V + sqrt(V) Z with V a
/// Generalized Inverse Gaussian (inverse gamma on the skew-t boundary);
/// stable variates use the Chambers-Mallows-Stuck transformation.
std::vector<double> family_sample(const FamilyParams& params, std::size_t n,
                                  std::uint64_t seed);

} // namespace hfret

#endif // HFRET_DISTRIBUTIONS_HPP
