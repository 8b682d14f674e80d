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

#ifndef HFRET_GOF_HPP
#define HFRET_GOF_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hfret/distributions.hpp"

namespace hfret {

using CdfFn = std::function<double(double)>;

struct Chi2Result {
  double statistic;
  int df;
  int n_bins;
};

struct GofReport {
  Chi2Result chi2;
  double ks;
  double ad;
  double cvm;
  std::size_t n;
  // (test, level) -> critical point, and reject decisions for the same keys
  struct Critical {
    std::string test;
    double level;
    double value;
    bool reject;
  };
  std::vector<Critical> decisions;

  nlohmann::json to_json() const;
};

/// D = max_i max(i/n - F(x_i), F(x_i) - (i-1)/n).  Data must be sorted.
double ks_stat(std::span<const double> sorted_data, const CdfFn& cdf);

/// A^2 = -n - (1/n) sum (2i-1)[ln F(x_i) + ln(1 - F(x_{n+1-i}))].
/// F values within 1e-12 of {0,1} are clamped to [1e-15, 1-1e-15];
/// farther out they raise an error naming the offending index.
double ad_stat(std::span<const double> sorted_data, const CdfFn& cdf);

/// W^2 = sum (F(x_i) - (2i-1)/(2n))^2 + 1/(12n).
double cvm_stat(std::span<const double> sorted_data, const CdfFn& cdf);

/// Pearson statistic over n_bins model-equiprobable bins (edges by
/// bisection on model_cdf); df = n_bins - 1, no parameter correction.
Chi2Result chi2_test(std::span<const double> data, const CdfFn& model_cdf,
                     int n_bins = 199);

/// Asymptotic KS critical point c(level)/sqrt(n); c(0.05)=1.358,
/// c(0.01)=1.628.  Requires n >= 35.
double ks_critical(std::size_t n, double level);

enum class GofStatistic { kKs, kAd, kCvm };

/// Parametric bootstrap: simulate B datasets from `fitted`, refit the same
/// family, recompute the statistic; p = (1 + #{boot >= observed}) / (B + 1).
double bootstrap_pvalue(std::span<const double> data, Family family,
                        const FamilyParams& fitted, int B,
                        GofStatistic statistic, std::uint64_t seed);

/// Full report: all four statistics plus decisions at 5%/1% where
/// asymptotic critical points exist (KS and CvM).
GofReport gof_report(std::span<const double> data, const FamilyParams& params,
                     int chi2_bins = 199);

} // namespace hfret

#endif // HFRET_GOF_HPP
