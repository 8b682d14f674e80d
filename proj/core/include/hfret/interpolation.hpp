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

#ifndef HFRET_INTERPOLATION_HPP
#define HFRET_INTERPOLATION_HPP

#include <cstddef>
#include <vector>

namespace hfret {

/// Shape-preserving cubic Hermite interpolant (Fritsch-Carlson slopes).
/// Immutable after construction and safe to share across threads.
class PchipCurve {
 public:
  PchipCurve() = default;
  PchipCurve(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;

  /// Evaluation for sorted query batches: hint is the segment to start
  /// scanning from and is advanced in place, so a sweep over sorted
  /// points costs O(n + nodes).
  double eval_hinted(double x, std::size_t& hint) const;

  /// Index of the segment containing x, clamped to the valid range.
  std::size_t segment(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  double y_front() const { return y_.front(); }
  double y_back() const { return y_.back(); }
  std::size_t size() const { return x_.size(); }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }

 private:
  double eval_segment(std::size_t i, double x) const;

  std::vector<double> x_, y_, d_; // nodes, values, node slopes
};

} // namespace hfret

#endif // HFRET_INTERPOLATION_HPP
