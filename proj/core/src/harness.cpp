#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "nygap/harness.hpp"
#include "nygap/operator_analysis.hpp"
#include "nygap/rng.hpp"

namespace nygap {

std::size_t source_size(const DataSource& data) {
  if (const auto* ps = std::get_if<PointSet>(&data)) return ps->size();
  return std::get<SymMatrix>(data).order();
}

KernelSpec resolve_kernel(const DataSource& data, KernelSpec spec) {
  if (std::holds_alternative<SymMatrix>(data)) {
    spec.family = KernelFamily::Precomputed;
    return spec;
  }
  if (spec.family == KernelFamily::RBF && spec.d2 <= 0.0) {
    const auto& ps = std::get<PointSet>(data);
    spec.d2 = ps.size() >= 2 ? mean_squared_distance(ps) : 1.0;
  }
  return spec;
}

SymMatrix gram_of(const DataSource& data, const KernelSpec& spec) {
  if (const auto* ps = std::get_if<PointSet>(&data)) return gram_matrix(*ps, spec);
  return std::get<SymMatrix>(data);
}

TrialReport run_trial(const DataSource& data, const KernelSpec& spec_in, std::size_t r,
                      std::size_t m, std::uint64_t seed, double confidence) {
  const auto t0 = std::chrono::steady_clock::now();
  const KernelSpec spec = resolve_kernel(data, spec_in);
  const SymMatrix k = gram_of(data, spec);
  const std::size_t n = k.order();
  if (m > n) throw std::invalid_argument("run_trial: m exceeds N");

  const EigenSystem full_eig = sym_eigen(k);
  const std::vector<std::size_t> indices = sample_uniform(n, m, seed);
  const NystromModel model = build_model(k, indices, r);
  const SymMatrix k_hat_r = approximate(model);
  const SymMatrix k_r = best_rank_r(full_eig, r);
  const AdditionalError err = additional_error(k, k_r, k_hat_r);

  const CoordinateOperator co = eigenfunction_coordinates(full_eig, model, n);
  const double hs = hs_norm_diff(co);
  const double dh = delta_h_spectral_norm(co, r);

  double p_frob = -1.0;
  try {
    p_frob = frobenius_norm(recover_p(co, r).p);
  } catch (const std::runtime_error&) {
    // leading block singular; reported as absent
  }

  BoundInputs bi;
  bi.eigengap = r < n ? eigengap(full_eig.values, r, n) : 0.0;
  bi.hs = hs;
  bi.confidence = confidence;
  bi.lambda1 = full_eig.values.front();
  bi.lambda_r = full_eig.values[r - 1];
  bi.sample_lambda_r = model.sample_eig.values[r - 1];
  bi.dh_norm = dh;
  bi.p_frob = p_frob;
  bi.k_diff_frob = frobenius_norm(k_hat_r.mat() - k_r.mat());
  bi.n = n;
  bi.m = m;
  bi.rank = r;

  TrialReport report;
  report.seed = seed;
  report.n = n;
  report.m = m;
  report.rank = r;
  report.kernel_family = spec.family == KernelFamily::RBF ? "rbf" : "precomputed";
  report.kernel_lambda = spec.family == KernelFamily::RBF ? spec.lambda : 0.0;
  report.kernel_d2 = spec.family == KernelFamily::RBF ? spec.d2 : 0.0;
  report.rng_algorithm = Rng::algorithm();
  report.eigengap = bi.eigengap;
  report.hs = hs;
  report.dh_norm = dh;
  report.p_frob = p_frob;
  report.frob_total = err.frob_total;
  report.frob_additional = err.frob_additional;
  report.spec_total = err.spec_total;
  report.spec_additional = err.spec_additional;
  report.bounds = assemble_report(bi);
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median: empty");
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

namespace {

std::vector<double> ranks_of(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // average 1-based rank
    for (std::size_t l = i; l <= j; ++l) ranks[order[l]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("spearman: need two equal-length series, length >= 2");
  const std::vector<double> rx = ranks_of(xs);
  const std::vector<double> ry = ranks_of(ys);
  const double mx = mean(rx), my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

LogSlopeFit fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_log_slope: length mismatch");
  std::vector<double> lx, ly;
  LogSlopeFit fit;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] <= 0.0) {
      ++fit.excluded;
      continue;
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 2) throw std::invalid_argument("fit_log_slope: fewer than 2 usable points");
  const double mx = mean(lx), my = mean(ly);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  fit.alpha = -sxy / sxx;
  return fit;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

TrialConfig make_random_trial_config(std::size_t index, std::uint64_t master_seed) {
  Rng rng(mix_seed(master_seed, 0xC0FF'EE00ULL + index));
  TrialConfig cfg;
  if (rng.below(2) == 0) {
    // clustered points, rank at the cluster count
    const std::size_t k = 2 + rng.below(3);
    const std::size_t per = 25 + rng.below(76);  // N in [50, 300]
    const double separation = 4.0 + 6.0 * rng.uniform01();
    const double spread = 0.6 + 0.9 * rng.uniform01();
    const std::size_t dim = 3 + rng.below(4);
    cfg.data = synth_clusters(k, per, separation, spread, dim, rng.engine()());
    cfg.r = k;
  } else {
    // prescribed spectrum with a controlled gap at the chosen rank
    const std::size_t n = 50 + rng.below(251);
    const std::size_t r = 2 + rng.below(4);
    const double head = 0.25 + 0.15 * rng.uniform01();
    const double tail = head * (0.05 + 0.1 * rng.uniform01());
    std::vector<double> spectrum(n, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      spectrum[i] = (head - 0.01 * static_cast<double>(i)) * static_cast<double>(n);
    double v = tail * static_cast<double>(n);
    for (std::size_t i = r; i < std::min(n, r + 25); ++i) {
      spectrum[i] = v;
      v *= 0.8;
    }
    cfg.data = synth_gram_with_spectrum(spectrum, rng.engine()()).gram;
    cfg.r = r;
  }
  const std::size_t n = source_size(cfg.data);
  const std::size_t m_low = std::max<std::size_t>(4 * cfg.r, n / 6);
  const std::size_t m_high = n / 2;
  cfg.m = m_low + rng.below(std::max<std::size_t>(1, m_high - m_low + 1));
  cfg.spec.family = std::holds_alternative<PointSet>(cfg.data) ? KernelFamily::RBF
                                                               : KernelFamily::Precomputed;
  cfg.spec.lambda = 10.0;
  cfg.spec.d2 = 0.0;  // auto
  return cfg;
}

}  // namespace nygap
