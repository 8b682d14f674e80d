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

#include "hfret/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hfret {

namespace {

std::vector<double> gradient(const Objective& f, const std::vector<double>& x,
                             double step) {
  std::vector<double> g(x.size());
  std::vector<double> p = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::fabs(x[i]));
    p[i] = x[i] + h;
    const double fp = f(p);
    p[i] = x[i] - h;
    const double fm = f(p);
    p[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

} // namespace

OptimResult minimize_bfgs(const Objective& f, std::vector<double> x0,
                          const OptimOptions& opts) {
  const std::size_t n = x0.size();
  OptimResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  if (!std::isfinite(res.value))
    throw std::invalid_argument("minimize_bfgs: objective not finite at x0");

  // inverse Hessian approximation, started at identity
  std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) h[i][i] = 1.0;

  std::vector<double> g = gradient(f, res.x, opts.finite_diff_step);
  for (res.iterations = 1; res.iterations <= opts.max_iterations;
       ++res.iterations) {
    std::vector<double> dir(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dir[i] -= h[i][j] * g[j];

    double slope = dot(dir, g);
    if (slope >= 0.0) { // not a descent direction, reset to steepest
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) h[i][j] = (i == j) ? 1.0 : 0.0;
        dir[i] = -g[i];
      }
      slope = dot(dir, g);
      if (slope >= 0.0) break; // gradient numerically zero
    }

    // backtracking Armijo line search
    double step = 1.0;
    double fnew = std::numeric_limits<double>::infinity();
    std::vector<double> xnew(n);
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) xnew[i] = res.x[i] + step * dir[i];
      fnew = f(xnew);
      if (std::isfinite(fnew) && fnew <= res.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> gnew = gradient(f, xnew, opts.finite_diff_step);
    std::vector<double> sx(n), yg(n);
    for (std::size_t i = 0; i < n; ++i) {
      sx[i] = xnew[i] - res.x[i];
      yg[i] = gnew[i] - g[i];
    }
    const double sy = dot(sx, yg);
    if (sy > 1e-12) {
      // BFGS inverse update
      std::vector<double> hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) hy[i] += h[i][j] * yg[j];
      const double yhy = dot(yg, hy);
      const double c1 = (sy + yhy) / (sy * sy);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          h[i][j] += c1 * sx[i] * sx[j] -
                     (hy[i] * sx[j] + sx[i] * hy[j]) / sy;
    }

    const double improvement =
        (res.value - fnew) / std::max(1.0, std::fabs(res.value));
    res.x = std::move(xnew);
    res.value = fnew;
    g = std::move(gnew);
    if (improvement >= 0.0 && improvement < opts.rel_tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

OptimResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                 const OptimOptions& opts) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    simplex[i + 1][i] +=
        opts.initial_simplex_step * std::max(1.0, std::fabs(x0[i]));
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  OptimResult res;
  for (res.iterations = 1; res.iterations <= opts.max_iterations;
       ++res.iterations) {
    // order
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];

    const double spread = std::fabs(fv[worst] - fv[best]) /
                          std::max(1.0, std::fabs(fv[best]));
    if (spread < opts.rel_tol) {
      res.converged = true;
      res.x = simplex[best];
      res.value = fv[best];
      return res;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + coef * (simplex[worst][j] - centroid[j]);
      return p;
    };

    auto reflect = blend(-1.0);
    const double fr = f(reflect);
    if (fr < fv[best]) {
      auto expand = blend(-2.0);
      const double fe = f(expand);
      if (fe < fr) {
        simplex[worst] = std::move(expand);
        fv[worst] = fe;
      } else {
        simplex[worst] = std::move(reflect);
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = std::move(reflect);
      fv[worst] = fr;
    } else {
      auto contract = blend(fr < fv[worst] ? -0.5 : 0.5);
      const double fc = f(contract);
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = std::move(contract);
        fv[worst] = fc;
      } else { // shrink toward the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] =
                simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  const std::size_t best = static_cast<std::size_t>(
      std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = simplex[best];
  res.value = fv[best];
  return res;
}

OptimResult minimize(const Objective& f, std::vector<double> x0,
                     const OptimOptions& opts) {
  OptimResult stage1 = minimize_bfgs(f, std::move(x0), opts);
  OptimOptions polish = opts;
  polish.initial_simplex_step = 0.02;
  polish.max_iterations =
      std::max(100, opts.max_iterations - stage1.iterations);
  OptimResult stage2 = minimize_nelder_mead(f, stage1.x, polish);
  OptimResult out = (stage2.value <= stage1.value) ? stage2 : stage1;
  out.iterations = stage1.iterations + stage2.iterations;
  out.converged = stage1.converged || stage2.converged;
  return out;
}

} // namespace hfret
