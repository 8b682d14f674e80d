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

#ifndef HFRET_INVERSION_HPP
#define HFRET_INVERSION_HPP

#include <complex>
#include <functional>
#include <vector>

namespace hfret {

/// Equispaced grid for Fourier inversion of a characteristic function.
/// n_points must be a power of two >= 2^10; spacing is derived.
struct InversionGrid {
  double x_min;
  double x_max;
  std::size_t n_points;

  double spacing() const { return (x_max - x_min) / (n_points - 1); }
  void validate() const;
};

struct TabulatedDensity {
  std::vector<double> x;
  std::vector<double> pdf;
};

using CharacteristicFunction = std::function<std::complex<double>(double)>;

/// In-place radix-2 complex FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse = false);

/// Density tabulation by discrete Fourier inversion of a characteristic
/// function over the grid.  Requires cf(0) == 1 to 1e-12.  Ripple below
/// -1e-12 raises; values in [-1e-12, 0) are clamped to zero.
TabulatedDensity cf_invert(const CharacteristicFunction& cf,
                           const InversionGrid& grid);

} // namespace hfret

#endif // HFRET_INVERSION_HPP
