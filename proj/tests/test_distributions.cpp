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

#include "hfret/distributions.hpp"
#include "hfret/quadrature.hpp"
#include "hfret/special_functions.hpp"

using namespace hfret;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((StableParams{0.0, 0.0, 1.0, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((StableParams{2.1, 0.0, 1.0, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((StableParams{1.5, 1.2, 1.0, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((StableParams{1.5, 0.0, -1.0, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((GHParams{0.0, 1.0, 1.0, 1.0, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((NIGParams{1.0, -1.5, 1.0, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((SkewTParams{0.0, 0.0, 1.0, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((GaussianParams{0.0, 0.0}.validate()), std::domain_error);
  CHECK_NOTHROW(StableParams{2.0, 0.0, 1.0, 0.0}.validate());
}

TEST_CASE("stable characteristic function basics") {
  const StableParams p{1.5, 0.3, 0.7, 0.2};
  CHECK(stable_cf(p, 0.0) == std::complex<double>(1.0, 0.0));
  for (double t : {-4.0, -0.3, 0.1, 2.0, 70.0})
    CHECK(std::abs(stable_cf(p, t)) <= 1.0 + 1e-14);
  // conjugate symmetry cf(-t) = conj(cf(t))
  CHECK(stable_cf(p, -1.3) == std::conj(stable_cf(p, 1.3)));
}

TEST_CASE("stable pdf: Gaussian closed form at alpha=2") {
  const StableParams p{2.0, 0.0, 0.8, 0.4};
  const StableDist d(p);
  const double sd = 0.8 * std::sqrt(2.0);
  for (double x = -8.0 + 0.4; x <= 8.0 + 0.4; x += 0.37) {
    const double z = (x - 0.4) / sd;
    const double want = std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * kPi));
    CHECK(std::fabs(d.pdf(x) - want) < 1e-6);
  }
}

TEST_CASE("stable pdf and cdf: Cauchy closed form at alpha=1") {
  const StableParams p{1.0, 0.0, 1.0, 0.0};
  const StableDist d(p);
  for (double x = -10.0; x <= 10.0; x += 0.23) {
    CHECK(std::fabs(d.pdf(x) - 1.0 / (kPi * (1.0 + x * x))) < 1e-6);
    const double want_cdf = 0.5 + std::atan(x) / kPi;
    CHECK(std::fabs(d.cdf(x) - want_cdf) < 2e-6);
  }
}

TEST_CASE("stable pdf: one-sided Levy closed form at alpha=1/2, beta=1") {
  // f(x) = sqrt(1/(2 pi)) x^{-3/2} e^{-1/(2x)}
  const StableDist d(StableParams{0.5, 1.0, 1.0, 0.0});
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    const double want =
        std::sqrt(1.0 / (2.0 * kPi)) * std::pow(x, -1.5) * std::exp(-0.5 / x);
    CHECK(d.pdf(x) == doctest::Approx(want).epsilon(2e-3));
  }
  // support is [0, inf): essentially no mass to the left of the origin
  CHECK(d.cdf(-0.5) < 1e-4);
}

TEST_CASE("stable pdf matches the tail asymptote far out") {
  const StableParams p{1.3, 0.4, 0.9, 0.0};
  const StableDist d(p);
  // beyond the grid the density follows |x|^-(alpha+1) exactly
  CHECK(d.pdf(200.0) / d.pdf(80.0) ==
        doctest::Approx(std::pow(200.0 / 80.0, -2.3)).epsilon(1e-12));
  const double ca = std::sin(0.5 * kPi * 1.3) * std::tgamma(1.3) / kPi;
  const double want = 1.3 * ca * 1.4 * std::pow(0.9, 1.3) * std::pow(80.0, -2.3);
  CHECK(d.pdf(80.0) == doctest::Approx(want).epsilon(1e-3));
}

TEST_CASE("NIG closed-form value at the center") {
  // f(0) = alpha delta K_1(alpha delta) e^{delta gamma} / (pi delta)
  //      = e K_1(1) / pi for alpha=delta=1, beta=mu=0
  CHECK(nig_pdf(NIGParams{1.0, 0.0, 1.0, 0.0}, 0.0) ==
        doctest::Approx(std::exp(1.0) * bessel_k(1.0, 1.0) / kPi)
            .epsilon(1e-12));
}

TEST_CASE("GH at lambda=-1/2 equals NIG") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> ua(0.2, 3.0), ud(0.2, 3.0),
      um(-1.0, 1.0), ub(-0.9, 0.9), ux(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double alpha = ua(gen), delta = ud(gen), mu = um(gen);
    const double beta = ub(gen) * alpha;
    const NIGParams np{alpha, beta, delta, mu};
    const GHParams gp{-0.5, alpha, beta, delta, mu};
    for (int k = 0; k < 20; ++k) {
      const double x = ux(gen);
      CHECK(gh_pdf(gp, x) == doctest::Approx(nig_pdf(np, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("skew-t with beta=0 is the classical Student t") {
  // nu=1, delta=1: Cauchy
  CHECK(skewt_pdf(SkewTParams{1.0, 0.0, 1.0, 0.0}, 0.0) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-12));
  // nu=3, delta=sqrt(3): t(3) with unit scale: f(x) ~ Gamma(2)/(Gamma(1.5)
  // sqrt(3 pi)) (1 + x^2/3)^{-2}
  const SkewTParams p{3.0, 0.0, std::sqrt(3.0), 0.0};
  for (double x : {-2.0, 0.0, 0.7, 4.0}) {
    const double want = (2.0 / (std::tgamma(1.5) * std::sqrt(3.0 * kPi))) *
                        std::pow(1.0 + x * x / 3.0, -2.0) * 0.5;
    CHECK(skewt_pdf(p, x) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("skew-t is the GH boundary lambda=-nu/2, alpha->|beta|") {
  const double nu = 3.5, beta = 0.8, delta = 1.2, mu = -0.3;
  const SkewTParams st{nu, beta, delta, mu};
  const GHParams gh{-nu / 2.0, std::fabs(beta) * (1.0 + 1e-9), beta, delta, mu};
  for (double x : {-3.0, -0.3, 0.5, 2.0, 6.0}) {
    CHECK(skewt_pdf(st, x) == doctest::Approx(gh_pdf(gh, x)).epsilon(1e-4));
  }
}

TEST_CASE("densities integrate to one") {
  auto mass = [](auto&& pdf) {
    return integrate_real_line([&](double x) { return pdf(x); }, 1e-11, 1e-11)
        .value;
  };
  CHECK(mass([](double x) { return gh_pdf(GHParams{0.7, 1.4, -0.5, 0.8, 0.1}, x); }) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(mass([](double x) { return nig_pdf(NIGParams{0.65, -0.01, 0.64, 0.01}, x); }) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(mass([](double x) { return skewt_pdf(SkewTParams{2.7, -0.009, 0.96, 0.01}, x); }) ==
        doctest::Approx(1.0).epsilon(1e-6));
  const StableDist sd(StableParams{1.6, 0.2, 0.5, 0.0});
  CHECK(mass([&](double x) { return sd.pdf(x); }) ==
        doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("family cdf against the quadrature oracle") {
  const NIGParams np{0.9, 0.2, 1.1, -0.2};
  FamilyCdf cdf{FamilyParams(np)};
  for (double x : {-4.0, -1.0, -0.2, 0.5, 3.0}) {
    // mirrored upper-tail integral: avoids both a discontinuous
    // integrand and 1 - F cancellation
    const double want =
        integrate_upper([&](double u) { return nig_pdf(np, -u); }, -x, 1e-13,
                        1e-13)
            .value;
    CHECK(cdf(x) == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("family cdf quantile round trip and sorted batch") {
  FamilyCdf cdf{FamilyParams(SkewTParams{4.0, 0.4, 1.0, 0.2})};
  for (double p : {0.01, 0.2, 0.5, 0.9, 0.99}) {
    CHECK(cdf(cdf.quantile(p)) == doctest::Approx(p).epsilon(1e-8));
  }
  std::vector<double> xs;
  for (double x = -6.0; x <= 6.0; x += 0.1) xs.push_back(x);
  const auto batch = cdf.at_sorted(xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(batch[i] == doctest::Approx(cdf(xs[i])).epsilon(1e-12));
}

TEST_CASE("sampling is deterministic and preserves the law") {
  const FamilyParams p(NIGParams{1.0, 0.3, 1.0, 0.0});
  const auto a = family_sample(p, 1000, 99);
  const auto b = family_sample(p, 1000, 99);
  CHECK(a == b);
  CHECK_THROWS_AS(family_sample(p, 0, 1), std::invalid_argument);

  // KS of a large sample against the model cdf below the 1% critical point
  auto sample = family_sample(p, 20000, 5);
  std::sort(sample.begin(), sample.end());
  FamilyCdf cdf(p);
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("stable sampler agrees with the inverted cdf") {
  const StableParams p{1.7, -0.3, 1.0, 0.5};
  auto sample = family_sample(FamilyParams(p), 20000, 6);
  std::sort(sample.begin(), sample.end());
  const StableDist dist(p);
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = dist.cdf(sample[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("gaussian sampler moments") {
  const auto s = family_sample(FamilyParams(GaussianParams{2.0, 3.0}), 100000, 3);
  double m = 0.0;
  for (double v : s) m += v;
  m /= static_cast<double>(s.size());
  double var = 0.0;
  for (double v : s) var += (v - m) * (v - m);
  var /= static_cast<double>(s.size() - 1);
  CHECK(m == doctest::Approx(2.0).epsilon(0.02));
  CHECK(var == doctest::Approx(9.0).epsilon(0.03));
}

TEST_CASE("family name round trip") {
  for (Family f : {Family::kStable, Family::kGH, Family::kNIG, Family::kSkewT,
                   Family::kGaussian}) {
    CHECK(family_from_name(family_name(f)) == f);
  }
  CHECK_THROWS_AS(family_from_name("weibull"), std::invalid_argument);
}
