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

#include "hfret/distributions.hpp"
#include "hfret/estimation.hpp"

using namespace hfret;

TEST_CASE("gaussian fit has the closed form") {
  const auto data = family_sample(FamilyParams(GaussianParams{0.3, 1.7}), 5000, 1);
  const FitResult r = mle_fit(Family::kGaussian, data);
  double mean = 0.0;
  for (double v : data) mean += v;
  mean /= static_cast<double>(data.size());
  double var = 0.0;
  for (double v : data) var += (v - mean) * (v - mean);
  var /= static_cast<double>(data.size()); // biased MLE variance
  const auto p = std::get<GaussianParams>(r.params);
  CHECK(p.mu == doctest::Approx(mean).epsilon(1e-9));
  CHECK(p.sigma == doctest::Approx(std::sqrt(var)).epsilon(1e-9));
  CHECK(r.converged);
}

TEST_CASE("quantile init: Gaussian edge of the table") {
  const auto data =
      family_sample(FamilyParams(GaussianParams{0.0, std::sqrt(2.0)}), 100000, 2);
  const StableParams p = stable_quantile_init(data);
  CHECK(p.alpha >= 1.95);
  // beta is unidentified at the Gaussian edge, so the inverted value is
  // noise-dominated; it only needs to stay small
  CHECK(std::fabs(p.beta) <= 0.15);
}

TEST_CASE("quantile init: Cauchy sample") {
  const auto data =
      family_sample(FamilyParams(StableParams{1.0, 0.0, 1.0, 0.0}), 100000, 3);
  const StableParams p = stable_quantile_init(data);
  CHECK(p.alpha == doctest::Approx(1.0).epsilon(0.05));
  CHECK(p.delta == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("quantile init: symmetry forces beta to zero") {
  auto data = family_sample(FamilyParams(StableParams{1.4, 0.0, 1.0, 0.0}), 5000, 4);
  std::vector<double> sym;
  for (double v : data) {
    sym.push_back(v);
    sym.push_back(-v);
  }
  CHECK(stable_quantile_init(sym).beta == 0.0);
}

TEST_CASE("quantile init error cases") {
  std::vector<double> constant(200, 1.0);
  CHECK_THROWS_AS(stable_quantile_init(constant), std::invalid_argument);
  std::vector<double> too_short(50, 0.0);
  CHECK_THROWS_AS(stable_quantile_init(too_short), std::invalid_argument);
}

TEST_CASE("mle_fit validates input") {
  std::vector<double> tiny(10, 0.5);
  CHECK_THROWS_AS(mle_fit(Family::kGaussian, tiny), std::invalid_argument);

  // mismatched init family
  const auto data = family_sample(FamilyParams(GaussianParams{0, 1}), 1000, 5);
  CHECK_THROWS_AS(
      mle_fit(Family::kNIG, data, FamilyParams(GaussianParams{0, 1})),
      std::invalid_argument);
}

TEST_CASE("mle_fit recovers NIG parameters at modest n") {
  const NIGParams truth{1.0, 0.2, 1.0, 0.0};
  const auto data = family_sample(FamilyParams(truth), 20000, 6);
  const FitResult r = mle_fit(Family::kNIG, data);
  const auto p = std::get<NIGParams>(r.params);
  CHECK(p.alpha == doctest::Approx(truth.alpha).epsilon(0.15));
  CHECK(p.delta == doctest::Approx(truth.delta).epsilon(0.15));
  CHECK(p.beta == doctest::Approx(truth.beta).epsilon(0.5));
  CHECK(r.converged);
  // returned optimum is never below the init likelihood
  double init_ll = 0.0, fit_ll = 0.0;
  for (double v : data) {
    init_ll += family_log_pdf(r.init_params, v);
    fit_ll += family_log_pdf(r.params, v);
  }
  CHECK(fit_ll >= init_ll - 1e-6 * std::fabs(init_ll));
}

TEST_CASE("location-scale equivariance for NIG") {
  const NIGParams truth{1.2, -0.3, 0.8, 0.1};
  const auto data = family_sample(FamilyParams(truth), 20000, 7);
  const double a = 2.5, b = -1.0;
  std::vector<double> scaled(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) scaled[i] = a * data[i] + b;

  const auto p0 = std::get<NIGParams>(mle_fit(Family::kNIG, data).params);
  const auto p1 = std::get<NIGParams>(mle_fit(Family::kNIG, scaled).params);
  CHECK(p1.mu == doctest::Approx(a * p0.mu + b).epsilon(2e-2));
  CHECK(p1.delta == doctest::Approx(a * p0.delta).epsilon(2e-2));
  CHECK(p1.alpha == doctest::Approx(p0.alpha / a).epsilon(2e-2));
  CHECK(p1.beta == doctest::Approx(p0.beta / a).epsilon(0.1));
}

TEST_CASE("lr_test contracts") {
  const auto data = family_sample(FamilyParams(NIGParams{1.0, 0.0, 1.0, 0.0}), 5000, 8);
  FitResult nig = mle_fit(Family::kNIG, data);

  // identical fits -> statistic 0, p = 1
  FitResult gh_same = nig;
  gh_same.family = Family::kGH;
  const auto& np = std::get<NIGParams>(nig.params);
  gh_same.params = GHParams{-0.5, np.alpha, np.beta, np.delta, np.mu};
  const LrtResult same = lr_test(gh_same, nig);
  CHECK(same.statistic == 0.0);
  CHECK(same.df == 1);
  CHECK(same.p_value == doctest::Approx(1.0).epsilon(1e-12));

  // mismatched n
  FitResult other = nig;
  other.n = 4999;
  CHECK_THROWS_AS(lr_test(gh_same, other), std::invalid_argument);

  // not a valid nesting
  CHECK_THROWS_AS(lr_test(nig, nig), std::invalid_argument);

  // full likelihood far below nested -> optimizer-failure signal
  FitResult broken = gh_same;
  broken.log_likelihood = nig.log_likelihood - 10.0;
  CHECK_THROWS_AS(lr_test(broken, nig), std::runtime_error);
}

TEST_CASE("lr_test p-value display") {
  LrtResult big{4551.78, 1, 0.0};
  big.p_value = 0.0;
  CHECK(big.p_display() == "<1e-16");
  LrtResult small{5.49, 1, 0.0191};
  CHECK(small.p_display() == std::string("0.0191"));
}

TEST_CASE("parameter counts") {
  CHECK(parameter_count(Family::kGH) == 5);
  CHECK(parameter_count(Family::kNIG) == 4);
  CHECK(parameter_count(Family::kSkewT) == 4);
  CHECK(parameter_count(Family::kStable) == 4);
  CHECK(parameter_count(Family::kGaussian) == 2);
}

TEST_CASE("fit result serializes with the documented shape") {
  const auto data = family_sample(FamilyParams(GaussianParams{0, 1}), 1000, 9);
  const FitResult r = mle_fit(Family::kGaussian, data);
  const auto j = r.to_json();
  CHECK(j.at("family") == "gaussian");
  CHECK(j.at("params").contains("mu"));
  CHECK(j.at("params").contains("sigma"));
  CHECK(j.at("n") == 1000);
  CHECK(j.contains("loglik"));
  CHECK(j.contains("converged"));
  CHECK(j.contains("iterations"));
}
