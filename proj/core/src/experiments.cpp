#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nygap/harness.hpp"
#include "nygap/linalg.hpp"
#include "nygap/operator_analysis.hpp"
#include "nygap/rng.hpp"

namespace nygap {

namespace {

std::string format_u64(std::uint64_t v) { return std::to_string(v); }

/// Additional Frobenius error of one resampling against a fixed best-rank-r
/// baseline. Shared by the figure and rate experiments.
double one_additional_error(const SymMatrix& k, double base_err, std::size_t r,
                            std::size_t m, std::uint64_t seed) {
  const NystromModel model = build_model(k, sample_uniform(k.order(), m, seed), r);
  const SymMatrix k_hat_r = approximate(model);
  double s = 0.0;
  for (std::size_t i = 0; i < k.order(); ++i)
    for (std::size_t j = 0; j < k.order(); ++j) {
      const double d = k(i, j) - k_hat_r(i, j);
      s += d * d;
    }
  return std::sqrt(s) - base_err;
}

// ||K - K_r||_F^2 equals the eigenvalue tail sum of squares
double best_rank_residual(const EigenSystem& full_eig, std::size_t r) {
  double s = 0.0;
  for (std::size_t i = r; i < full_eig.order(); ++i)
    s += full_eig.values[i] * full_eig.values[i];
  return std::sqrt(s);
}

void min_max_scale(const std::vector<double>& in, std::vector<double>& out) {
  const auto [lo, hi] = std::minmax_element(in.begin(), in.end());
  const double span = *hi - *lo;
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    out[i] = span > 0.0 ? (in[i] - *lo) / span : 0.0;
}

}  // namespace

CurveSeries figure1_experiment(const DataSource& data, const KernelSpec& spec_in,
                               const std::vector<std::size_t>& ranks, std::size_t m,
                               std::size_t trials, std::uint64_t seed,
                               std::size_t threads) {
  if (ranks.empty() || trials == 0)
    throw std::invalid_argument("figure1_experiment: need ranks and trials");
  const KernelSpec spec = resolve_kernel(data, spec_in);
  const SymMatrix k = gram_of(data, spec);
  const std::size_t n = k.order();
  for (std::size_t r : ranks)
    if (r == 0 || r >= n)
      throw std::invalid_argument("figure1_experiment: rank out of range");
  const EigenSystem full_eig = sym_eigen(k);

  std::vector<double> err_mean(ranks.size()), err_std(ranks.size()), gaps(ranks.size());
  std::vector<std::vector<double>> errs(ranks.size(),
                                        std::vector<double>(trials, 0.0));
  parallel_for(ranks.size() * trials, threads, [&](std::size_t idx) {
    const std::size_t ri = idx / trials;
    const std::size_t t = idx % trials;
    const double base = best_rank_residual(full_eig, ranks[ri]);
    errs[ri][t] = one_additional_error(k, base, ranks[ri], m, mix_seed(seed, idx));
  });
  for (std::size_t ri = 0; ri < ranks.size(); ++ri) {
    err_mean[ri] = mean(errs[ri]);
    err_std[ri] = stddev(errs[ri]);
    gaps[ri] = full_eig.values[ranks[ri] - 1] - full_eig.values[ranks[ri]];
  }

  CurveSeries out;
  out.x.assign(ranks.begin(), ranks.end());
  out.trials_per_point = trials;
  std::vector<double> err_scaled, gap_scaled;
  min_max_scale(err_mean, err_scaled);
  min_max_scale(gaps, gap_scaled);
  out.series = {{"additional_frob_mean", err_mean},
                {"additional_frob_std", err_std},
                {"eigengap", gaps},
                {"additional_frob_mean_scaled", err_scaled},
                {"eigengap_scaled", gap_scaled}};
  out.metadata = {{"experiment", "figure1"},
                  {"n", format_u64(n)},
                  {"m", format_u64(m)},
                  {"trials", format_u64(trials)},
                  {"seed", format_u64(seed)},
                  {"scaling", "min_max_per_series"},
                  {"rng", "mt19937_64+splitmix64"}};
  return out;
}

RateResult rate_experiment(const DataSource& data, const KernelSpec& spec_in, std::size_t r,
                           const std::vector<std::size_t>& m_grid, std::size_t trials,
                           std::uint64_t seed, std::size_t threads) {
  if (m_grid.empty() || trials == 0)
    throw std::invalid_argument("rate_experiment: need m grid and trials");
  for (std::size_t i = 1; i < m_grid.size(); ++i)
    if (m_grid[i] <= m_grid[i - 1])
      throw std::invalid_argument("rate_experiment: m grid must be ascending");
  const KernelSpec spec = resolve_kernel(data, spec_in);
  const SymMatrix k = gram_of(data, spec);
  if (m_grid.back() >= k.order())
    throw std::invalid_argument("rate_experiment: max m must be below N");
  const EigenSystem full_eig = sym_eigen(k);
  const double base = best_rank_residual(full_eig, r);

  std::vector<std::vector<double>> errs(m_grid.size(), std::vector<double>(trials, 0.0));
  parallel_for(m_grid.size() * trials, threads, [&](std::size_t idx) {
    const std::size_t mi = idx / trials;
    const std::size_t t = idx % trials;
    errs[mi][t] = one_additional_error(k, base, r, m_grid[mi], mix_seed(seed, idx));
  });

  RateResult res;
  std::vector<double> medians(m_grid.size());
  for (std::size_t mi = 0; mi < m_grid.size(); ++mi) medians[mi] = median(errs[mi]);
  std::vector<double> xs(m_grid.begin(), m_grid.end());
  const LogSlopeFit fit = fit_log_slope(xs, medians);
  res.alpha = fit.alpha;
  res.excluded_points = fit.excluded;
  res.curve.x = xs;
  res.curve.trials_per_point = trials;
  res.curve.series = {{"additional_frob_median", medians}};
  res.curve.metadata = {{"experiment", "rates"},
                        {"n", format_u64(k.order())},
                        {"rank", format_u64(r)},
                        {"trials", format_u64(trials)},
                        {"seed", format_u64(seed)},
                        {"aggregate", "median"},
                        {"alpha", std::to_string(res.alpha)},
                        {"excluded_points", format_u64(res.excluded_points)},
                        {"rng", "mt19937_64+splitmix64"}};
  return res;
}

CoverageResult coverage_experiment(const DataSource& data, const KernelSpec& spec_in,
                                   std::size_t m, double confidence, std::size_t trials,
                                   std::uint64_t seed, std::size_t threads) {
  if (trials == 0) throw std::invalid_argument("coverage_experiment: need trials >= 1");
  const KernelSpec spec = resolve_kernel(data, spec_in);
  const SymMatrix k = gram_of(data, spec);
  const EigenSystem full_eig = sym_eigen(k);

  CoverageResult res;
  res.bound = concentration_bound(m, confidence);
  res.samples.assign(trials, 0.0);
  parallel_for(trials, threads, [&](std::size_t t) {
    const NystromModel model =
        build_model(k, sample_uniform(k.order(), m, mix_seed(seed, t)), 1);
    res.samples[t] = hs_norm_diff(eigenfunction_coordinates(full_eig, model, k.order()));
  });
  std::size_t covered = 0;
  for (double hs : res.samples)
    if (hs <= res.bound) ++covered;
  res.coverage = static_cast<double>(covered) / static_cast<double>(trials);
  return res;
}

}  // namespace nygap
