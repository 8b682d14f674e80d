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

#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "hfret/distributions.hpp"
#include "hfret/gof.hpp"
#include "hfret/special_functions.hpp"

namespace {

void BM_BesselK(benchmark::State& state) {
  double nu = 0.37, x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hfret::bessel_k(nu, x, true));
    x = x < 100.0 ? x * 1.7 : 0.01;
    nu = nu < 4.0 ? nu + 0.31 : 0.37;
  }
}
BENCHMARK(BM_BesselK);

void BM_StableTableBuild(benchmark::State& state) {
  const hfret::StableParams p{1.5, 0.1, 1.0, 0.0};
  for (auto _ : state) {
    hfret::StableDist dist(p);
    benchmark::DoNotOptimize(dist.pdf(0.0));
  }
}
BENCHMARK(BM_StableTableBuild)->Unit(benchmark::kMillisecond);

void BM_StableLogPdfSweep(benchmark::State& state) {
  const hfret::StableDist dist(hfret::StableParams{1.5, 0.1, 1.0, 0.0});
  const auto sample =
      hfret::family_sample(hfret::StableParams{1.5, 0.1, 1.0, 0.0}, 10000, 1);
  for (auto _ : state) {
    double s = 0.0;
    for (double x : sample) s += dist.log_pdf(x);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_StableLogPdfSweep)->Unit(benchmark::kMicrosecond);

void BM_KsStat(benchmark::State& state) {
  auto sample = hfret::family_sample(hfret::GaussianParams{0.0, 1.0},
                                     static_cast<std::size_t>(state.range(0)),
                                     2);
  std::sort(sample.begin(), sample.end());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        hfret::ks_stat(sample, [](double x) { return hfret::normal_cdf(x); }));
  }
}
BENCHMARK(BM_KsStat)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
