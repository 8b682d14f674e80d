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

#ifndef HFRET_QUADRATURE_HPP
#define HFRET_QUADRATURE_HPP

#include <functional>

namespace hfret {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (7-15) integration on a finite interval.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-10,
                           double rel_tol = 1e-10, int max_depth = 60);

/// Integration over the whole real line via the substitution
/// x = t / (1 - t^2) on (-1, 1).
QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     double abs_tol = 1e-10,
                                     double rel_tol = 1e-10);

/// Integration over (a, +inf).
QuadratureResult integrate_upper(const std::function<double(double)>& f,
                                 double a, double abs_tol = 1e-10,
                                 double rel_tol = 1e-10);

} // namespace hfret

#endif // HFRET_QUADRATURE_HPP
