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

#ifndef HFRET_RNG_HPP
#define HFRET_RNG_HPP

#include <cstdint>
#include <random>

namespace hfret {

/// Seeded generator with explicit variate transforms, so sequences are
/// reproducible independent of standard-library distribution internals.
/// Owns its state; not shareable mid-stream across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1), endpoints excluded.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double exponential() { return -std::log(uniform()); }

  double normal(); // Box-Muller, pair-cached

  /// Gamma(shape, 1) via Marsaglia-Tsang.
  double gamma(double shape);

  /// Inverse Gaussian with mean m and shape l (Michael-Schucany-Haas).
  double inverse_gaussian(double m, double l);

  /// Generalized Inverse Gaussian with density ~ x^{p-1} e^{-(a x + b/x)/2},
  /// a > 0, b > 0 (Devroye 2014 two-sided exponential rejection).
  double gig(double p, double a, double b);

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace hfret

#endif // HFRET_RNG_HPP
