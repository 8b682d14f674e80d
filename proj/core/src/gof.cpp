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

#include "hfret/gof.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "hfret/estimation.hpp"
#include "hfret/parallel.hpp"
#include "hfret/special_functions.hpp"

namespace hfret {

namespace {

void require_sorted(std::span<const double> data, const char* who) {
  if (data.empty()) throw std::invalid_argument(std::string(who) + ": empty data");
  for (std::size_t i = 1; i < data.size(); ++i)
    if (data[i] < data[i - 1])
      throw std::invalid_argument(std::string(who) + ": data not sorted");
}

} // namespace

double ks_stat(std::span<const double> data, const CdfFn& cdf) {
  require_sorted(data, "ks_stat");
  const double n = static_cast<double>(data.size());
  double d = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = cdf(data[i]);
    d = std::max(d, (i + 1) / n - f);
    d = std::max(d, f - i / n);
  }
  return d;
}

double ad_stat(std::span<const double> data, const CdfFn& cdf) {
  require_sorted(data, "ad_stat");
  const std::size_t n = data.size();
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = cdf(data[i]);
    // exact 0/1 (or out of range) signals genuine misuse; values merely
    // within 1e-12 of the boundary are numerical tail underflow and are
    // clamped instead
    if (v <= 0.0 || v >= 1.0)
      throw std::domain_error("ad_stat: F(x) at index " + std::to_string(i) +
                              " is outside (0,1)");
    f[i] = std::clamp(v, 1e-15, 1.0 - 1e-15);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 2.0 * (i + 1) - 1.0;
    s += w * (std::log(f[i]) + std::log1p(-f[n - 1 - i]));
  }
  const double nn = static_cast<double>(n);
  return -nn - s / nn;
}

double cvm_stat(std::span<const double> data, const CdfFn& cdf) {
  require_sorted(data, "cvm_stat");
  const double n = static_cast<double>(data.size());
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double d = cdf(data[i]) - (2.0 * (i + 1) - 1.0) / (2.0 * n);
    s += d * d;
  }
  return s + 1.0 / (12.0 * n);
}

Chi2Result chi2_test(std::span<const double> data, const CdfFn& model_cdf,
                     int n_bins) {
  if (n_bins < 3) throw std::invalid_argument("chi2_test: need n_bins >= 3");
  if (data.size() < 5 * static_cast<std::size_t>(n_bins))
    throw std::invalid_argument("chi2_test: need n >= 5 * n_bins");

  // bin edges at model quantiles i/n_bins, found by bisection
  std::vector<double> edges(n_bins - 1);
  double lo0 = -1.0, hi0 = 1.0;
  while (model_cdf(lo0) > 1.0 / n_bins && lo0 > -1e12) lo0 *= 2.0;
  while (model_cdf(hi0) < 1.0 - 1.0 / n_bins && hi0 < 1e12) hi0 *= 2.0;
  if (model_cdf(lo0) > 1.0 / n_bins || model_cdf(hi0) < 1.0 - 1.0 / n_bins)
    throw std::runtime_error("chi2_test: model support not bracketable");
  for (int k = 1; k < n_bins; ++k) {
    const double target = static_cast<double>(k) / n_bins;
    double lo = lo0, hi = hi0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (model_cdf(mid) < target ? lo : hi) = mid;
    }
    edges[k - 1] = 0.5 * (lo + hi);
  }

  std::vector<std::size_t> counts(n_bins, 0);
  for (double x : data) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    ++counts[static_cast<std::size_t>(it - edges.begin())];
  }
  const double expected = static_cast<double>(data.size()) / n_bins;
  double stat = 0.0;
  for (std::size_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return Chi2Result{stat, n_bins - 1, n_bins};
}

double ks_critical(std::size_t n, double level) {
  if (n < 35) throw std::invalid_argument("ks_critical: need n >= 35");
  double c;
  if (level == 0.05) c = 1.358;
  else if (level == 0.01) c = 1.628;
  else throw std::invalid_argument("ks_critical: level must be 0.05 or 0.01");
  return c / std::sqrt(static_cast<double>(n));
}

double bootstrap_pvalue(std::span<const double> data, Family family,
                        const FamilyParams& fitted, int B,
                        GofStatistic statistic, std::uint64_t seed) {
  if (B < 99) throw std::invalid_argument("bootstrap_pvalue: need B >= 99");
  if (family_of(fitted) != family)
    throw std::invalid_argument("bootstrap_pvalue: family mismatch");

  auto compute = [statistic](std::span<const double> sorted,
                             const FamilyParams& p) {
    FamilyCdf cdf(p);
    const auto f = [&cdf](double x) { return cdf(x); };
    switch (statistic) {
      case GofStatistic::kKs: return ks_stat(sorted, f);
      case GofStatistic::kAd: return ad_stat(sorted, f);
      case GofStatistic::kCvm: return cvm_stat(sorted, f);
    }
    throw std::logic_error("bootstrap_pvalue: bad statistic tag");
  };

  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double observed = compute(sorted, fitted);

  std::atomic<int> failures{0};
  std::atomic<int> exceed{0};
  parallel_for(static_cast<std::size_t>(B), [&](std::size_t b) {
    try {
      std::vector<double> boot =
          family_sample(fitted, data.size(), seed + b + 1);
      std::sort(boot.begin(), boot.end());
      const FitResult refit = mle_fit(family, boot);
      if (compute(boot, refit.params) >= observed) exceed.fetch_add(1);
    } catch (const std::exception&) {
      failures.fetch_add(1);
    }
  });
  if (failures.load() * 20 > B)
    throw std::runtime_error("bootstrap_pvalue: more than 5% of replicate "
                             "refits failed");
  return (1.0 + exceed.load()) / (B + 1.0);
}

GofReport gof_report(std::span<const double> data, const FamilyParams& params,
                     int chi2_bins) {
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  FamilyCdf cdf(params);
  // batch CDF over the sorted sample: one grid sweep instead of per-point
  // lookups
  std::vector<double> f = cdf.at_sorted(sorted);

  const std::size_t n = sorted.size();
  const double nn = static_cast<double>(n);
  double ks = 0.0, cvm = 1.0 / (12.0 * nn), ad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fi = std::clamp(f[i], 1e-15, 1.0 - 1e-15);
    ks = std::max(ks, std::max((i + 1) / nn - fi, fi - i / nn));
    const double d = fi - (2.0 * (i + 1) - 1.0) / (2.0 * nn);
    cvm += d * d;
    const double w = 2.0 * (i + 1) - 1.0;
    ad += w * (std::log(fi) + std::log1p(-std::clamp(f[n - 1 - i], 1e-15,
                                                     1.0 - 1e-15)));
  }
  ad = -nn - ad / nn;

  GofReport r;
  r.chi2 = chi2_test(data, [&cdf](double x) { return cdf(x); }, chi2_bins);
  r.ks = ks;
  r.ad = ad;
  r.cvm = cvm;
  r.n = n;
  // asymptotic points: KS c/sqrt(n); CvM 0.4614 / 0.7435 (all-parameters-
  // known case); chi-square quantiles at df
  const double cvm_crit[2] = {0.4614, 0.7435};
  const double levels[2] = {0.05, 0.01};
  for (int k = 0; k < 2; ++k) {
    const double kc = ks_critical(n, levels[k]);
    r.decisions.push_back({"ks", levels[k], kc, ks > kc});
    r.decisions.push_back({"cvm", levels[k], cvm_crit[k], cvm > cvm_crit[k]});
    const double cc = chi_squared_upper_quantile(levels[k], r.chi2.df);
    r.decisions.push_back({"chi2", levels[k], cc, r.chi2.statistic > cc});
    const double adc = (k == 0) ? 2.492 : 3.878;
    r.decisions.push_back({"ad", levels[k], adc, ad > adc});
  }
  return r;
}

nlohmann::json GofReport::to_json() const {
  nlohmann::json crit = nlohmann::json::array();
  for (const auto& d : decisions) {
    crit.push_back({{"test", d.test},
                    {"level", d.level},
                    {"critical", d.value},
                    {"reject", d.reject}});
  }
  return {{"chi2",
           {{"statistic", chi2.statistic},
            {"df", chi2.df},
            {"bins", chi2.n_bins}}},
          {"ks", ks},
          {"ad", ad},
          {"cvm", cvm},
          {"n", n},
          {"decisions", crit}};
}

} // namespace hfret
