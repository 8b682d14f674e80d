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

#include "hfret/inversion.hpp"

#include <cmath>
#include <stdexcept>

namespace hfret {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
} // namespace

void InversionGrid::validate() const {
  if (!(x_min < x_max))
    throw std::invalid_argument("InversionGrid: x_min < x_max required");
  if (n_points < 1024 || !is_pow2(n_points))
    throw std::invalid_argument(
        "InversionGrid: n_points must be a power of two >= 1024");
}

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft_radix2: size not 2^k");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / static_cast<double>(len) *
                       (inverse ? 1.0 : -1.0);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse)
    for (auto& z : a) z /= static_cast<double>(n);
}

TabulatedDensity cf_invert(const CharacteristicFunction& cf,
                           const InversionGrid& grid) {
  grid.validate();
  const std::size_t n = grid.n_points;
  const double h = grid.spacing();
  const double dt = 2.0 * kPi / (static_cast<double>(n) * h);

  const std::complex<double> at_zero = cf(0.0);
  if (std::abs(at_zero - std::complex<double>(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("cf_invert: cf(0) != 1, contract violation");

  // f(x_j) = (dt / 2pi) (-1)^j DFT_j[ cf(t_k) e^{-i t_k x_min} ],
  // with t_k = (k - n/2) dt and x_j = x_min + j h.
  std::vector<std::complex<double>> a(n);
  const double half = static_cast<double>(n) / 2.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (static_cast<double>(k) - half) * dt;
    const double phase = -t * grid.x_min;
    a[k] = cf(t) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  fft_radix2(a);

  TabulatedDensity out;
  out.x.resize(n);
  out.pdf.resize(n);
  const double scale = dt / (2.0 * kPi);
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = grid.x_min + static_cast<double>(j) * h;
    double v = scale * a[j].real();
    if (j % 2 == 1) v = -v;
    if (v < -1e-12)
      throw std::runtime_error(
          "cf_invert: negative density ripple beyond tolerance, grid "
          "misconfigured");
    out.pdf[j] = std::max(v, 0.0);
  }
  return out;
}

} // namespace hfret
