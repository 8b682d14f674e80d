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

#include "hfret/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "hfret/optimize.hpp"
#include "hfret/parallel.hpp"
#include "hfret/serialize.hpp"
#include "hfret/special_functions.hpp"

namespace hfret {

namespace {

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

// ---------------------------------------------------------------------------
// Unconstrained reparameterizations.  Positive parameters use log,
// interval parameters a scaled logistic / tanh, so any theta maps to a
// valid parameter vector.

std::vector<double> pack(const FamilyParams& p) {
  switch (family_of(p)) {
    case Family::kStable: {
      const auto& v = std::get<StableParams>(p);
      return {logit(std::clamp(v.alpha / 2.0, 1e-6, 1.0 - 1e-9)),
              std::atanh(std::clamp(v.beta, -1.0 + 1e-9, 1.0 - 1e-9)),
              std::log(v.delta), v.mu};
    }
    case Family::kGH: {
      const auto& v = std::get<GHParams>(p);
      return {10.0 * std::atanh(std::clamp(v.lambda / 10.0, -0.999, 0.999)),
              std::log(v.alpha),
              std::atanh(std::clamp(v.beta / v.alpha, -0.999999, 0.999999)),
              std::log(v.delta), v.mu};
    }
    case Family::kNIG: {
      const auto& v = std::get<NIGParams>(p);
      return {std::log(v.alpha),
              std::atanh(std::clamp(v.beta / v.alpha, -0.999999, 0.999999)),
              std::log(v.delta), v.mu};
    }
    case Family::kSkewT: {
      const auto& v = std::get<SkewTParams>(p);
      return {std::log(v.nu), v.beta, std::log(v.delta), v.mu};
    }
    case Family::kGaussian: {
      const auto& v = std::get<GaussianParams>(p);
      return {v.mu, std::log(v.sigma)};
    }
  }
  throw std::logic_error("pack: bad family");
}

FamilyParams unpack(Family f, const std::vector<double>& t) {
  switch (f) {
    case Family::kStable: {
      double alpha = 2.0 * logistic(t[0]);
      // the S1 parameterization is discontinuous at alpha = 1; snap a
      // small exclusion window onto it to stabilize the optimizer
      if (std::fabs(alpha - 1.0) < 1e-4) alpha = 1.0;
      return StableParams{alpha, std::tanh(t[1]), std::exp(t[2]), t[3]};
    }
    case Family::kGH: {
      const double alpha = std::exp(t[1]);
      return GHParams{10.0 * std::tanh(t[0] / 10.0), alpha,
                      alpha * std::tanh(t[2]), std::exp(t[3]), t[4]};
    }
    case Family::kNIG: {
      const double alpha = std::exp(t[0]);
      return NIGParams{alpha, alpha * std::tanh(t[1]), std::exp(t[2]), t[3]};
    }
    case Family::kSkewT:
      return SkewTParams{std::exp(t[0]), t[1], std::exp(t[2]), t[3]};
    case Family::kGaussian:
      return GaussianParams{t[0], std::exp(t[1])};
  }
  throw std::logic_error("unpack: bad family");
}

// Mean negative log-likelihood with a fixed-order blockwise reduction,
// so the value is independent of the worker count.  `stable_points` sets
// the inversion-grid resolution for stable candidates.
double mean_negloglik(const FamilyParams& p, std::span<const double> data,
                      std::size_t stable_points = 1 << 16) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (data.size() + kBlock - 1) / kBlock;

  std::vector<double> partial(blocks);
  if (family_of(p) == Family::kStable) {
    // one inversion table per candidate parameter vector
    const StableDist dist(std::get<StableParams>(p), 32.0, stable_points);
    parallel_for(blocks, [&](std::size_t b) {
      const std::size_t lo = b * kBlock;
      const std::size_t hi = std::min(lo + kBlock, data.size());
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s -= dist.log_pdf(data[i]);
      partial[b] = s;
    });
  } else {
    parallel_for(blocks, [&](std::size_t b) {
      const std::size_t lo = b * kBlock;
      const std::size_t hi = std::min(lo + kBlock, data.size());
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s -= family_log_pdf(p, data[i]);
      partial[b] = s;
    });
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total / static_cast<double>(data.size());
}

FamilyParams default_init(Family f, std::span<const double> data) {
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  auto q = [&](double prob) {
    const double pos = prob * (sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - i;
    return (i + 1 < sorted.size())
               ? sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
               : sorted.back();
  };
  const double median = q(0.5);
  const double iqr = q(0.75) - q(0.25);
  const double scale = std::max(iqr / 2.0, 1e-8);
  switch (f) {
    case Family::kGH: return GHParams{-0.5, 1.0, 0.0, scale, median};
    case Family::kNIG: return NIGParams{1.0, 0.0, scale, median};
    case Family::kSkewT: return SkewTParams{4.0, 0.0, scale, median};
    default:
      throw std::logic_error("default_init: unsupported family");
  }
}

} // namespace

int parameter_count(Family f) {
  switch (f) {
    case Family::kStable: return 4;
    case Family::kGH: return 5;
    case Family::kNIG: return 4;
    case Family::kSkewT: return 4;
    case Family::kGaussian: return 2;
  }
  throw std::logic_error("parameter_count: bad family");
}

FitResult mle_fit(Family family, std::span<const double> data,
                  const std::optional<FamilyParams>& init,
                  const FitOptions& options) {
  if (data.size() < 50)
    throw std::invalid_argument("mle_fit: need at least 50 observations");
  if (init && family_of(*init) != family)
    throw std::invalid_argument("mle_fit: init family mismatch");

  const double n = static_cast<double>(data.size());

  if (family == Family::kGaussian) {
    // closed form: mu = sample mean, sigma^2 = biased sample variance
    double mean = 0.0;
    for (double v : data) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : data) var += (v - mean) * (v - mean);
    var /= n;
    const GaussianParams p{mean, std::sqrt(var)};
    FitResult r{family,
                p,
                -mean_negloglik(p, data) * n,
                data.size(),
                0,
                true,
                true,
                init.value_or(FamilyParams(p))};
    return r;
  }

  FamilyParams start =
      init ? *init
           : (family == Family::kStable
                  ? FamilyParams(stable_quantile_init(data))
                  : default_init(family, data));
  validate_params(start);

  const std::size_t sp = options.stable_fit_points;
  const double init_obj = mean_negloglik(start, data, sp);
  if (!std::isfinite(init_obj)) {
    throw std::invalid_argument(
        "mle_fit: log-likelihood not finite at init: " +
        params_to_json(start).dump());
  }

  auto make_objective = [family, sp](std::span<const double> d) {
    return [family, sp, d](const std::vector<double>& t) {
      try {
        return mean_negloglik(unpack(family, t), d, sp);
      } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
      }
    };
  };

  OptimOptions oopts;
  oopts.rel_tol = options.rel_tol;
  oopts.max_iterations = options.max_iterations;

  std::vector<double> theta = pack(start);
  int used_iterations = 0;

  // coarse stage on a strided subsample for large n
  std::vector<double> sub;
  if (data.size() > options.subsample_threshold) {
    const std::size_t m = options.subsample_size;
    sub.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      sub.push_back(data[i * data.size() / m]);
    auto coarse = minimize(make_objective(sub), theta, oopts);
    used_iterations += coarse.iterations;
    // keep the coarse point only if it helps on the full data
    if (mean_negloglik(unpack(family, coarse.x), data, sp) < init_obj)
      theta = coarse.x;
  }

  auto result = minimize(make_objective(data), theta, oopts);
  used_iterations += result.iterations;

  FamilyParams fitted = unpack(family, result.x);
  if (result.value > init_obj) { // never return worse than the init
    fitted = start;
    result.converged = false;
  }
  // report the log-likelihood at full resolution
  const double final_obj = mean_negloglik(fitted, data);

  return FitResult{family,
                   fitted,
                   -final_obj * n,
                   data.size(),
                   used_iterations,
                   result.converged,
                   result.converged,
                   start};
}

// ---------------------------------------------------------------------------
// Quantile-based initializer for stable laws.  The inversion tables are
// generated once from the implemented distribution on an (alpha, beta)
// grid; the estimator then matches the classic quantile ratios
//   nu_alpha = (q95 - q05) / (q75 - q25)
//   nu_beta  = (q95 + q05 - 2 q50) / (q95 - q05).

namespace {

// Location drift of the standardized law relative to its parameter mu:
// quantiles behave like beta tan(pi alpha / 2) + O(1), which diverges as
// alpha -> 1.  Tabulating quantiles with this shift removed keeps the
// table continuous in alpha (including through alpha = 1, where the
// log-form characteristic function makes the shift zero).
double s1_location_shift(double alpha, double beta) {
  if (std::fabs(alpha - 1.0) < 1e-9) return 0.0;
  return beta * std::tan(1.5707963267948966 * alpha);
}

struct QuantileTable {
  std::vector<double> alphas, betas;
  // [ia][ib] shift-corrected quantiles of the standardized law
  // (delta=1, mu=0): z_k - s1_location_shift(alpha, beta)
  std::vector<std::vector<std::array<double, 5>>> z;
  std::vector<std::vector<double>> nu_a, nu_b;
};

const QuantileTable& quantile_table() {
  static QuantileTable table = [] {
    QuantileTable t;
    for (int k = 6; k <= 20; ++k) t.alphas.push_back(k / 10.0);
    t.betas = {0.0, 0.25, 0.5, 0.75, 1.0};
    const double probs[5] = {0.05, 0.25, 0.5, 0.75, 0.95};
    t.z.resize(t.alphas.size());
    t.nu_a.resize(t.alphas.size());
    t.nu_b.resize(t.alphas.size());
    for (std::size_t ia = 0; ia < t.alphas.size(); ++ia) {
      t.z[ia].resize(t.betas.size());
      t.nu_a[ia].resize(t.betas.size());
      t.nu_b[ia].resize(t.betas.size());
      for (std::size_t ib = 0; ib < t.betas.size(); ++ib) {
        double beta = t.betas[ib];
        const double alpha = t.alphas[ia];
        if (alpha == 2.0) beta = 0.0; // beta is unidentified at the edge
        // keep the inversion window over the mass of the law
        const double shift = s1_location_shift(alpha, beta);
        const StableDist dist(StableParams{alpha, beta, 1.0, -shift});
        for (int k = 0; k < 5; ++k) {
          double lo = -1.0, hi = 1.0;
          while (dist.cdf(lo) > probs[k]) lo *= 2.0;
          while (dist.cdf(hi) < probs[k]) hi *= 2.0;
          for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (dist.cdf(mid) < probs[k] ? lo : hi) = mid;
          }
          t.z[ia][ib][k] = 0.5 * (lo + hi);
        }
        const auto& zz = t.z[ia][ib];
        t.nu_a[ia][ib] = (zz[4] - zz[0]) / (zz[3] - zz[1]);
        t.nu_b[ia][ib] = (zz[4] + zz[0] - 2.0 * zz[2]) / (zz[4] - zz[0]);
      }
    }
    return t;
  }();
  return table;
}

double interp1(const std::vector<double>& xs, const std::vector<double>& ys,
               double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return ys[i] * (1.0 - w) + ys[i + 1] * w;
}

// invert a tabulated monotone curve ys(xs) at value v
double invert1(const std::vector<double>& xs, std::vector<double> ys,
               double v) {
  const bool decreasing = ys.front() > ys.back();
  if (decreasing) {
    std::reverse(ys.begin(), ys.end());
    std::vector<double> rx(xs.rbegin(), xs.rend());
    return interp1(ys, rx, v);
  }
  return interp1(ys, xs, v);
}

} // namespace

StableParams stable_quantile_init(std::span<const double> data) {
  if (data.size() < 100)
    throw std::invalid_argument("stable_quantile_init: need n >= 100");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  auto q = [&](double prob) {
    const double pos = prob * (sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - i;
    return (i + 1 < sorted.size())
               ? sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
               : sorted.back();
  };
  const double x05 = q(0.05), x25 = q(0.25), x50 = q(0.5), x75 = q(0.75),
               x95 = q(0.95);
  if (!(x75 - x25 > 0.0))
    throw std::invalid_argument(
        "stable_quantile_init: degenerate interquartile range");

  const double nu_a = (x95 - x05) / (x75 - x25);
  double nu_b_signed = (x95 + x05 - 2.0 * x50) / (x95 - x05);
  if (std::fabs(nu_b_signed) < 1e-12) nu_b_signed = 0.0; // exact symmetry
  const double sign = (nu_b_signed >= 0.0) ? 1.0 : -1.0;
  const double nu_b = std::fabs(nu_b_signed);

  const QuantileTable& t = quantile_table();
  const std::size_t na = t.alphas.size(), nb = t.betas.size();

  double alpha = 1.5, beta_abs = 0.0;
  for (int iter = 0; iter < 20; ++iter) {
    // nu_alpha profile at the current |beta|
    std::vector<double> prof(na);
    for (std::size_t ia = 0; ia < na; ++ia) {
      std::vector<double> row(t.nu_a[ia]);
      prof[ia] = interp1(t.betas, row, beta_abs);
    }
    const double new_alpha =
        std::clamp(invert1(t.alphas, prof, nu_a), 0.6, 2.0);
    // nu_beta profile at the new alpha
    std::vector<double> profb(nb);
    for (std::size_t ib = 0; ib < nb; ++ib) {
      std::vector<double> col(na);
      for (std::size_t ia = 0; ia < na; ++ia) col[ia] = t.nu_b[ia][ib];
      profb[ib] = interp1(t.alphas, col, new_alpha);
    }
    const double new_beta =
        nu_b == 0.0 ? 0.0 : std::clamp(invert1(t.betas, profb, nu_b), 0.0, 1.0);
    const bool done = std::fabs(new_alpha - alpha) < 1e-6 &&
                      std::fabs(new_beta - beta_abs) < 1e-6;
    alpha = new_alpha;
    beta_abs = new_beta;
    if (done) break;
  }

  // standardized quantiles at the fitted shape for scale and location;
  // negative skew mirrors the tabulated positive-beta quantiles
  auto zq = [&](int k) {
    std::vector<double> za(na);
    for (std::size_t ia = 0; ia < na; ++ia) {
      std::vector<double> zb(nb);
      for (std::size_t ib = 0; ib < nb; ++ib) zb[ib] = t.z[ia][ib][k];
      za[ia] = interp1(t.betas, zb, beta_abs);
    }
    return interp1(t.alphas, za, alpha);
  };
  const double z25 = zq(1), z50 = zq(2), z75 = zq(3);
  const double zspread = z75 - z25;
  const double delta = (x75 - x25) / std::max(zspread, 1e-12);
  // restore the tabulated location shift, then mirror for negative skew
  const double z50_full = z50 + s1_location_shift(alpha, beta_abs);
  const double z50s = (sign > 0) ? z50_full : -z50_full;
  const double mu = x50 - delta * z50s;

  StableParams out{std::clamp(alpha, 0.6, 2.0), sign * beta_abs, delta, mu};
  if (out.alpha >= 2.0) out.beta = 0.0;
  out.validate();
  return out;
}

LrtResult lr_test(const FitResult& full, const FitResult& nested) {
  if (full.n != nested.n)
    throw std::invalid_argument("lr_test: sample sizes differ");
  const bool ok_pair =
      (full.family == Family::kGH &&
       (nested.family == Family::kNIG || nested.family == Family::kSkewT)) ||
      (full.family == Family::kStable && nested.family == Family::kGaussian);
  if (!ok_pair)
    throw std::invalid_argument(
        "lr_test: nested family is not a restriction of the full one");
  const int df = parameter_count(full.family) - parameter_count(nested.family);
  const double diff = full.log_likelihood - nested.log_likelihood;
  if (diff < -1e-6)
    throw std::runtime_error(
        "lr_test: full likelihood below nested, optimizer failure");
  const double stat = std::max(0.0, 2.0 * diff);
  return LrtResult{stat, df, chi_squared_upper_tail(stat, df)};
}

std::string LrtResult::p_display() const {
  if (p_value < 1e-16) return "<1e-16";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", p_value);
  return buf;
}

nlohmann::json LrtResult::to_json() const {
  return {{"statistic", statistic},
          {"df", df},
          {"p_value", p_value},
          {"p_display", p_display()}};
}

nlohmann::json FitResult::to_json() const {
  nlohmann::json pj = params_to_json(params);
  pj.erase("family");
  return {{"family", family_name(family)},
          {"params", pj},
          {"loglik", log_likelihood},
          {"n", n},
          {"converged", converged},
          {"iterations", iterations}};
}

} // namespace hfret
