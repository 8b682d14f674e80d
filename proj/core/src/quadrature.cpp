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

#include "hfret/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace hfret {
namespace {

// 15-point Kronrod nodes on [-1, 1] (positive half) and weights, with the
// embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

void gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                   double& kronrod, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
  for (int i = 0; i < 3; ++i)
    resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  kronrod = resk * h;
  err = std::fabs((resk - resg) * h);
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double tol, int depth, int max_depth, QuadratureResult& out) {
  double v, e;
  gauss_kronrod(f, a, b, v, e);
  if (e <= tol || depth >= max_depth) {
    out.value += v;
    out.error_estimate += e;
    return;
  }
  const double c = 0.5 * (a + b);
  ++out.subdivisions;
  adapt(f, a, c, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, c, b, 0.5 * tol, depth + 1, max_depth, out);
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           int max_depth) {
  if (!(a < b)) throw std::invalid_argument("integrate: require a < b");
  double v0, e0;
  gauss_kronrod(f, a, b, v0, e0);
  const double tol = std::max(abs_tol, rel_tol * std::fabs(v0));
  QuadratureResult out;
  adapt(f, a, b, tol, 0, max_depth, out);
  return out;
}

QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     double abs_tol, double rel_tol) {
  auto g = [&f](double t) {
    const double om = 1.0 - t * t;
    const double x = t / om;
    const double jac = (1.0 + t * t) / (om * om);
    const double v = f(x);
    return std::isfinite(v) ? v * jac : 0.0;
  };
  return integrate(g, -1.0 + 1e-14, 1.0 - 1e-14, abs_tol, rel_tol);
}

QuadratureResult integrate_upper(const std::function<double(double)>& f,
                                 double a, double abs_tol, double rel_tol) {
  auto g = [&f, a](double t) {
    const double om = 1.0 - t;
    const double x = a + t / om;
    const double v = f(x);
    return std::isfinite(v) ? v / (om * om) : 0.0;
  };
  return integrate(g, 0.0, 1.0 - 1e-14, abs_tol, rel_tol);
}

} // namespace hfret
