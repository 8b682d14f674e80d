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

#ifndef HFRET_OPTIMIZE_HPP
#define HFRET_OPTIMIZE_HPP

#include <functional>
#include <vector>

namespace hfret {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct OptimOptions {
  double rel_tol = 1e-8;
  int max_iterations = 2000;
  double finite_diff_step = 1e-6;
  double initial_simplex_step = 0.1;
};

/// BFGS with central-difference gradients and backtracking line search.
OptimResult minimize_bfgs(const Objective& f, std::vector<double> x0,
                          const OptimOptions& opts = {});

/// Nelder-Mead simplex.
OptimResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                 const OptimOptions& opts = {});

/// Quasi-Newton stage followed by a derivative-free simplex polish.
OptimResult minimize(const Objective& f, std::vector<double> x0,
                     const OptimOptions& opts = {});

} // namespace hfret

#endif // HFRET_OPTIMIZE_HPP
