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

#ifndef HFRET_SPECIAL_FUNCTIONS_HPP
#define HFRET_SPECIAL_FUNCTIONS_HPP

namespace hfret {

/// Modified Bessel function of the third kind K_nu(x).
///
/// Temme's series for x < 2 and Steed's continued fraction for x >= 2,
/// with upward recurrence in the order. Valid for any finite real order
/// (K_{-nu} = K_nu) and x > 0; relative error is below 1e-12 for
/// nu in [-5, 5], x in [1e-8, 700].
///
/// With scaled = true the underflow-safe value e^x * K_nu(x) is returned.
double bessel_k(double order, double x, bool scaled = false);

/// log(K_nu(x)), usable where the unscaled value under/overflows.
double log_bessel_k(double order, double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Upper-tail probability of a chi-square variable with df degrees of freedom.
double chi_squared_upper_tail(double statistic, double df);

/// Upper quantile: x with chi_squared_upper_tail(x, df) == level.
double chi_squared_upper_quantile(double level, double df);

/// Standard normal CDF and its inverse.
double normal_cdf(double z);
double normal_quantile(double p);

} // namespace hfret

#endif // HFRET_SPECIAL_FUNCTIONS_HPP
