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

#ifndef HFRET_ESTIMATION_HPP
#define HFRET_ESTIMATION_HPP

#include <optional>
#include <span>

#include <json.hpp>

#include "hfret/distributions.hpp"

namespace hfret {

struct FitResult {
  Family family;
  FamilyParams params;
  double log_likelihood;
  std::size_t n;
  int iterations;
  bool converged;
  bool objective_tolerance_met;
  FamilyParams init_params;

  nlohmann::json to_json() const;
};

struct LrtResult {
  double statistic; // -2 log Lambda, clamped at 0
  int df;
  double p_value;

  /// "<1e-16" for underflowing p-values, otherwise the number.
  std::string p_display() const;
  nlohmann::json to_json() const;
};

struct FitOptions {
  double rel_tol = 1e-8;
  int max_iterations = 2000;
  /// Optimize on a subsample of this size first when n is larger,
  /// then refine on the full data.
  std::size_t subsample_threshold = 50000;
  std::size_t subsample_size = 20000;
  /// Inversion-grid resolution for stable candidates during the search;
  /// the reported log-likelihood is recomputed at full resolution.
  std::size_t stable_fit_points = 1 << 14;
};

/// Maximum-likelihood fit over a bijectively unconstrained
/// reparameterization (log for positive parameters, scaled logistic for
/// interval ones).  Quasi-Newton stage plus simplex polish.
FitResult mle_fit(Family family, std::span<const double> data,
                  const std::optional<FamilyParams>& init = std::nullopt,
                  const FitOptions& options = {});

/// Quantile-matching initializer for stable laws from the 5/25/50/75/95%
/// sample quantiles, via lookup tables generated from the implemented
/// distribution itself.
StableParams stable_quantile_init(std::span<const double> data);

/// Likelihood-ratio test of a nested family against the full one.
LrtResult lr_test(const FitResult& full, const FitResult& nested);

/// Number of free parameters per family (GH=5, NIG=4, skew-t=4, stable=4,
/// Gaussian=2).
int parameter_count(Family f);

} // namespace hfret

#endif // HFRET_ESTIMATION_HPP
