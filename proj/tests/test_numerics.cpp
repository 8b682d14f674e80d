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

#include <cmath>
#include <complex>
#include <random>

#include "hfret/interpolation.hpp"
#include "hfret/inversion.hpp"
#include "hfret/quadrature.hpp"
#include "hfret/special_functions.hpp"

using namespace hfret;

namespace {
constexpr double kPi = 3.14159265358979323846;

// independent oracle: K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt
double bessel_k_oracle(double nu, double x) {
  // the integrand underflows once x cosh t > ~745, so a finite interval
  // captures the full double-precision mass
  const double t_max = std::acosh(745.0 / x) + 1.0;
  return integrate(
             [nu, x](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); },
             0.0, t_max, 0.0, 1e-13)
      .value;
}
} // namespace

TEST_CASE("bessel_k closed forms at half-integer order") {
  CHECK(bessel_k(0.5, 2.0) ==
        doctest::Approx(std::sqrt(kPi / 4.0) * std::exp(-2.0)).epsilon(1e-12));
  CHECK(bessel_k(-0.5, 2.0) == doctest::Approx(bessel_k(0.5, 2.0)).epsilon(1e-14));
  // K_{3/2}(x) = sqrt(pi/(2x)) e^{-x} (1 + 1/x)
  CHECK(bessel_k(1.5, 3.0) ==
        doctest::Approx(std::sqrt(kPi / 6.0) * std::exp(-3.0) * (1.0 + 1.0 / 3.0))
            .epsilon(1e-12));
}

TEST_CASE("bessel_k against the quadrature oracle") {
  CHECK(bessel_k(1.0, 1.0) == doctest::Approx(0.6019072302).epsilon(1e-9));
  for (double nu : {0.0, 0.3, 1.0, 2.7, 4.5}) {
    for (double x : {0.05, 0.5, 1.8, 2.5, 10.0, 40.0}) {
      CHECK(bessel_k(nu, x) ==
            doctest::Approx(bessel_k_oracle(nu, x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("bessel_k symmetry K_{-nu} = K_nu") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unu(0.0, 5.0), ux(1e-3, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double nu = unu(gen), x = ux(gen);
    CHECK(bessel_k(-nu, x) == doctest::Approx(bessel_k(nu, x)).epsilon(1e-12));
  }
}

TEST_CASE("bessel_k recurrence") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> unu(-3.0, 3.0), ux(0.05, 30.0);
  for (int i = 0; i < 200; ++i) {
    const double nu = unu(gen), x = ux(gen);
    const double lhs = bessel_k(nu + 1.0, x, true);
    const double rhs =
        bessel_k(nu - 1.0, x, true) + (2.0 * nu / x) * bessel_k(nu, x, true);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("bessel_k scaled variant and domain errors") {
  // e^x K_nu(x) stays representable where the plain value underflows
  CHECK(bessel_k(1.0, 600.0, true) ==
        doctest::Approx(bessel_k(1.0, 600.0) * std::exp(600.0)).epsilon(1e-9));
  CHECK(bessel_k(0.3, 800.0, true) > 0.0);
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_k(1.0, -2.0), std::domain_error);
}

TEST_CASE("log_bessel_k tracks log of the scaled value") {
  for (double nu : {0.2, 1.7, 3.9}) {
    for (double x : {0.01, 1.0, 20.0, 300.0}) {
      CHECK(log_bessel_k(nu, x) ==
            doctest::Approx(std::log(bessel_k(nu, x, true)) - x).epsilon(1e-10));
    }
  }
  // extreme order/argument combination where even the scaled value overflows
  CHECK(std::isfinite(log_bessel_k(400.0, 1e-3)));
}

TEST_CASE("log_gamma") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-13));
  CHECK(log_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-13));
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("chi-squared tail and quantile") {
  CHECK(chi_squared_upper_tail(5.49, 1) == doctest::Approx(0.0191).epsilon(0.01));
  // df=2 upper tail is exp(-x/2)
  CHECK(chi_squared_upper_tail(3.0, 2) ==
        doctest::Approx(std::exp(-1.5)).epsilon(1e-10));
  const double q05 = chi_squared_upper_quantile(0.05, 198);
  const double q01 = chi_squared_upper_quantile(0.01, 198);
  CHECK(q05 == doctest::Approx(231.8).epsilon(0.01));
  CHECK(q01 == doctest::Approx(246.0).epsilon(0.01));
  CHECK(chi_squared_upper_tail(q05, 198) == doctest::Approx(0.05).epsilon(1e-8));
}

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(normal_cdf(1.959963985) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-8));
}

TEST_CASE("adaptive quadrature") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(integrate_real_line([](double x) {
          return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
        }).value == doctest::Approx(1.0).epsilon(1e-10));
  // integrable endpoint singularity
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0).value ==
        doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("cf_invert Gaussian transform pair") {
  InversionGrid grid{-16.0, 16.0, 1 << 14};
  // cf(t) = e^{-t^2}  <->  N(0, 2)
  const auto tab = cf_invert(
      [](double t) { return std::complex<double>(std::exp(-t * t), 0.0); },
      grid);
  double max_err = 0.0;
  for (std::size_t j = 0; j < tab.x.size(); ++j) {
    const double x = tab.x[j];
    if (std::fabs(x) > 10.0) continue;
    const double want = std::exp(-x * x / 4.0) / (2.0 * std::sqrt(kPi));
    max_err = std::max(max_err, std::fabs(tab.pdf[j] - want));
  }
  CHECK(max_err < 1e-6);
  // value at the origin
  std::size_t mid = tab.x.size() / 2;
  CHECK(tab.pdf[mid] == doctest::Approx(0.2820948).epsilon(1e-5));
}

TEST_CASE("cf_invert Cauchy transform pair") {
  InversionGrid grid{-512.0, 512.0, 1 << 18}; // wide window tames wrap-around
  const auto tab = cf_invert(
      [](double t) {
        return std::complex<double>(std::exp(-std::fabs(t)), 0.0);
      },
      grid);
  const std::size_t mid = tab.x.size() / 2;
  CHECK(tab.pdf[mid] == doctest::Approx(1.0 / kPi).epsilon(1e-5));
}

TEST_CASE("cf_invert contract violations") {
  InversionGrid grid{-8.0, 8.0, 1 << 10};
  CHECK_THROWS_AS(
      cf_invert([](double t) { return std::complex<double>(0.5, 0.0); }, grid),
      std::invalid_argument);
  InversionGrid bad{-8.0, 8.0, 1000}; // not a power of two
  CHECK_THROWS(cf_invert(
      [](double t) { return std::complex<double>(std::exp(-t * t), 0.0); },
      bad));
}

TEST_CASE("pchip interpolation") {
  PchipCurve lin({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
  CHECK(lin(1.5) == doctest::Approx(4.0).epsilon(1e-14));

  // monotone data stays monotone between nodes
  PchipCurve mono({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.1, 0.2, 2.0, 2.1});
  double prev = mono(0.0);
  for (double x = 0.01; x <= 4.0; x += 0.01) {
    const double v = mono(x);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }

  // hinted evaluation matches plain evaluation on a sorted sweep
  std::size_t hint = 0;
  for (double x = 0.0; x <= 4.0; x += 0.037) {
    CHECK(mono.eval_hinted(x, hint) == doctest::Approx(mono(x)).epsilon(1e-15));
  }
}
