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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hfret/estimation.hpp"
#include "hfret/gof.hpp"
#include "hfret/special_functions.hpp"

using namespace hfret;

namespace {
const CdfFn uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
}

TEST_CASE("ks_stat hand values") {
  // single observation at the median
  CHECK(ks_stat(std::vector<double>{0.5}, uniform_cdf) == doctest::Approx(0.5));

  // midpoint grid: D = 1/(2n)
  std::vector<double> mid;
  const int n = 10;
  for (int i = 1; i <= n; ++i) mid.push_back((2.0 * i - 1.0) / (2.0 * n));
  CHECK(ks_stat(mid, uniform_cdf) == doctest::Approx(1.0 / (2.0 * n)).epsilon(1e-12));

  // n=3 example, hand enumeration of the six gaps
  CHECK(ks_stat(std::vector<double>{0.1, 0.2, 0.9}, uniform_cdf) ==
        doctest::Approx(0.4667).epsilon(1e-3));

  std::vector<double> unsorted{0.9, 0.1};
  CHECK_THROWS_AS(ks_stat(unsorted, uniform_cdf), std::invalid_argument);
}

TEST_CASE("ad_stat hand value and boundary rule") {
  // n=2 with F values {0.25, 0.75}
  CHECK(ad_stat(std::vector<double>{0.25, 0.75}, uniform_cdf) ==
        doctest::Approx(0.2494).epsilon(1e-3));

  // F = 1 exactly is a hard error naming the index
  std::vector<double> hits_one{0.5, 1.7};
  CHECK_THROWS_AS(ad_stat(hits_one, uniform_cdf), std::domain_error);

  // values within 1e-12 of the boundary are clamped, not fatal
  const CdfFn nearly = [](double x) {
    return std::clamp(x, 1e-14, 1.0 - 1e-14);
  };
  CHECK(std::isfinite(ad_stat(std::vector<double>{0.0, 0.5, 1.0}, nearly)));
}

TEST_CASE("cvm_stat hand values") {
  // F at midpoints: W^2 = 1/(12n); n=2 -> 1/24
  CHECK(cvm_stat(std::vector<double>{0.25, 0.75}, uniform_cdf) ==
        doctest::Approx(1.0 / 24.0).epsilon(1e-12));
  // n=1, F(x)=0.9 -> 0.16 + 1/12
  CHECK(cvm_stat(std::vector<double>{0.9}, uniform_cdf) ==
        doctest::Approx(0.16 + 1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("statistics are invariant under joint monotone transformation") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  std::vector<double> data;
  for (int i = 0; i < 200; ++i) data.push_back(u(gen));
  std::sort(data.begin(), data.end());

  std::vector<double> mapped(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) mapped[i] = std::exp(data[i]);
  const CdfFn mapped_cdf = [](double y) {
    return std::clamp(std::log(y), 0.0, 1.0);
  };
  CHECK(ks_stat(mapped, mapped_cdf) ==
        doctest::Approx(ks_stat(data, uniform_cdf)).epsilon(1e-12));
  CHECK(cvm_stat(mapped, mapped_cdf) ==
        doctest::Approx(cvm_stat(data, uniform_cdf)).epsilon(1e-12));
  CHECK(ad_stat(mapped, mapped_cdf) ==
        doctest::Approx(ad_stat(data, uniform_cdf)).epsilon(1e-10));
}

TEST_CASE("chi2_test equiprobable binning") {
  // counts exactly proportional to expectations -> statistic 0
  std::vector<double> data;
  const int bins = 3;
  for (int b = 0; b < bins; ++b)
    for (int k = 0; k < 5; ++k)
      data.push_back((b + 0.5) / bins + 0.01 * k / bins);
  const auto r = chi2_test(data, uniform_cdf, bins);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.df == bins - 1);
  CHECK(r.n_bins == bins);

  // hand value: n=30, 3 bins, counts {15, 10, 5}, expected 10 each
  std::vector<double> skewed;
  for (int k = 0; k < 15; ++k) skewed.push_back(0.01 + 0.02 * k);
  for (int k = 0; k < 10; ++k) skewed.push_back(0.35 + 0.03 * k);
  for (int k = 0; k < 5; ++k) skewed.push_back(0.70 + 0.05 * k);
  const auto s = chi2_test(skewed, uniform_cdf, 3);
  CHECK(s.statistic == doctest::Approx((25.0 + 0.0 + 25.0) / 10.0).epsilon(1e-9));

  CHECK_THROWS_AS(chi2_test(data, uniform_cdf, 2), std::invalid_argument);
  std::vector<double> small(5, 0.5);
  CHECK_THROWS_AS(chi2_test(small, uniform_cdf, 3), std::invalid_argument);
}

TEST_CASE("ks_critical") {
  CHECK(ks_critical(1035810, 0.05) == doctest::Approx(0.0013343).epsilon(1e-4));
  CHECK(ks_critical(1035810, 0.01) == doctest::Approx(0.0015996).epsilon(1e-4));
  CHECK(ks_critical(100, 0.05) == doctest::Approx(0.1358).epsilon(1e-12));
  CHECK_THROWS_AS(ks_critical(10, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(ks_critical(1000, 0.10), std::invalid_argument);
}

TEST_CASE("bootstrap p-value behaves under null and gross misfit") {
  // data straight from the hypothesized Gaussian: p stays away from 0.
  // The observed statistic must use the MLE of the data, matching the
  // refit applied to every bootstrap replicate.
  const auto data = family_sample(FamilyParams(GaussianParams{0.0, 1.0}), 300, 11);
  const FamilyParams fitted = mle_fit(Family::kGaussian, data).params;
  const double p_null =
      bootstrap_pvalue(data, Family::kGaussian, fitted, 99, GofStatistic::kKs, 42);
  CHECK(p_null > 0.01);

  // Cauchy data against a Gaussian null: observed beats every replicate
  const auto cauchy =
      family_sample(FamilyParams(StableParams{1.0, 0.0, 1.0, 0.0}), 300, 12);
  const double p_bad = bootstrap_pvalue(cauchy, Family::kGaussian,
                                        FamilyParams(GaussianParams{0.0, 1.0}),
                                        99, GofStatistic::kKs, 43);
  CHECK(p_bad == doctest::Approx(1.0 / 100.0).epsilon(1e-12));

  CHECK_THROWS_AS(bootstrap_pvalue(data, Family::kGaussian, fitted, 0,
                                   GofStatistic::kKs, 1),
                  std::invalid_argument);
}

TEST_CASE("gof_report decisions are consistent with the statistics") {
  const auto data = family_sample(FamilyParams(GaussianParams{0.0, 1.0}), 2000, 13);
  const GofReport r = gof_report(data, FamilyParams(GaussianParams{0.0, 1.0}), 19);
  CHECK(r.n == 2000);
  CHECK(r.ks >= 0.0);
  CHECK(r.ks <= 1.0);
  CHECK(r.cvm > 0.0);
  CHECK(r.chi2.statistic >= 0.0);
  for (const auto& d : r.decisions) {
    double stat = 0.0;
    if (d.test == "ks") stat = r.ks;
    else if (d.test == "ad") stat = r.ad;
    else if (d.test == "cvm") stat = r.cvm;
    else stat = r.chi2.statistic;
    CHECK(d.reject == (stat > d.value));
  }
  const auto j = r.to_json();
  CHECK(j.at("chi2").at("bins") == 19);
  CHECK(j.at("decisions").size() == r.decisions.size());
}

TEST_CASE("ordering sanity: a better model scores lower on all four tests") {
  // Gaussian data; compare the true model against a contaminated null
  const auto data = family_sample(FamilyParams(GaussianParams{0.0, 1.0}), 5000, 14);
  const GofReport good = gof_report(data, FamilyParams(GaussianParams{0.0, 1.0}), 19);
  const GofReport bad = gof_report(data, FamilyParams(GaussianParams{0.4, 1.3}), 19);
  CHECK(good.ks < bad.ks);
  CHECK(good.ad < bad.ad);
  CHECK(good.cvm < bad.cvm);
  CHECK(good.chi2.statistic < bad.chi2.statistic);
}
