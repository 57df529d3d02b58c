#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nygap/bounds.hpp"
#include "nygap/kernel.hpp"
#include "nygap/matrix.hpp"
#include "nygap/nystrom.hpp"

namespace nygap {

/// A trial runs either on raw points (kernel evaluated on the fly) or on a
/// precomputed Gram matrix with a prescribed spectrum.
using DataSource = std::variant<PointSet, SymMatrix>;

std::size_t source_size(const DataSource& data);

/// Full record of one pipeline pass.
struct TrialReport {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t rank = 0;
  std::string kernel_family;  // "rbf" or "precomputed"
  double kernel_lambda = 0.0;
  double kernel_d2 = 0.0;
  std::string rng_algorithm;
  double eigengap = 0.0;
  double hs = 0.0;
  double dh_norm = 0.0;
  double p_frob = -1.0;  // negative when recovery was not possible
  double frob_total = 0.0;
  double frob_additional = 0.0;
  double spec_total = 0.0;
  double spec_additional = 0.0;
  BoundReport bounds;
  double wall_ms = 0.0;  // serialized only on request; see emit_report
};

/// Aligned series over a shared x axis (rank or sample count).
struct CurveSeries {
  std::vector<double> x;
  std::vector<std::pair<std::string, std::vector<double>>> series;
  std::size_t trials_per_point = 0;
  std::vector<std::pair<std::string, std::string>> metadata;

  const std::vector<double>& at(const std::string& name) const;
};

// ---- ingestion ----

/// Rows of comma-separated reals, uniform arity. Errors carry the line number.
PointSet load_points_csv(const std::string& path);

/// Sparse "label idx:val ..." lines, 1-based indices, labels discarded.
PointSet load_points_libsvm(const std::string& path);

// ---- synthesis ----

/// Gaussian blobs at mutually separated axis-aligned centers.
PointSet synth_clusters(std::size_t k, std::size_t per_cluster, double separation,
                        double spread, std::size_t dim, std::uint64_t seed);

/// Same construction with an explicit per-cluster size list (mixtures with
/// decaying cluster mass give smoothly decaying spectra).
PointSet synth_clusters_sizes(const std::vector<std::size_t>& sizes, double separation,
                              double spread, std::size_t dim, std::uint64_t seed);

struct SpectrumGram {
  SymMatrix gram;
  std::vector<double> effective_spectrum;  // after unit-diagonal rescale
};

/// Q diag(spectrum) Q^T for a seeded random orthogonal Q, rescaled so the
/// largest diagonal entry is 1. Spectrum must be nonnegative and descending.
SpectrumGram synth_gram_with_spectrum(const std::vector<double>& spectrum,
                                      std::uint64_t seed);

// ---- orchestration ----

/// Fills d2 from the data when the spec requests RBF with d2 <= 0 (auto).
KernelSpec resolve_kernel(const DataSource& data, KernelSpec spec);

SymMatrix gram_of(const DataSource& data, const KernelSpec& spec);

/// One full pipeline pass: Gram, spectrum, sampling, reconstruction,
/// coordinates, norms, bounds.
TrialReport run_trial(const DataSource& data, const KernelSpec& spec, std::size_t r,
                      std::size_t m, std::uint64_t seed, double confidence = 0.1);

/// Per-rank mean/std additional error plus the raw and min-max-scaled eigengap
/// series.
CurveSeries figure1_experiment(const DataSource& data, const KernelSpec& spec,
                               const std::vector<std::size_t>& ranks, std::size_t m,
                               std::size_t trials, std::uint64_t seed,
                               std::size_t threads = 0);

struct RateResult {
  double alpha = 0.0;  // negated log-log slope of median error vs m
  CurveSeries curve;
  std::size_t excluded_points = 0;  // non-positive medians dropped from the fit
};

RateResult rate_experiment(const DataSource& data, const KernelSpec& spec, std::size_t r,
                           const std::vector<std::size_t>& m_grid, std::size_t trials,
                           std::uint64_t seed, std::size_t threads = 0);

struct CoverageResult {
  double coverage = 0.0;
  double bound = 0.0;
  std::vector<double> samples;  // observed operator distances, one per resampling
};

CoverageResult coverage_experiment(const DataSource& data, const KernelSpec& spec,
                                   std::size_t m, double confidence, std::size_t trials,
                                   std::uint64_t seed, std::size_t threads = 0);

// ---- statistics ----

double mean(const std::vector<double>& xs);
double stddev(const std::vector<double>& xs);
double median(std::vector<double> xs);

/// Spearman rank correlation; average ranks on ties.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

struct LogSlopeFit {
  double alpha = 0.0;
  std::size_t excluded = 0;
};

/// Least-squares slope of log(y) against log(x), negated; y <= 0 excluded.
LogSlopeFit fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---- emission ----

std::string trial_to_json(const TrialReport& report, bool include_timing = false);
TrialReport trial_from_json(const std::string& text);
std::string curve_to_csv(const CurveSeries& series);
std::string curve_to_json(const CurveSeries& series);

/// format is "json" or "csv"; anything else is rejected.
void emit_report(const TrialReport& report, const std::string& path,
                 const std::string& format, bool include_timing = false);
void emit_report(const CurveSeries& series, const std::string& path,
                 const std::string& format);

// ---- parallel trial fan-out ----

/// Runs fn(0..count) across workers; results must be written by index so that
/// parallel and serial execution agree. threads == 0 picks the hardware count.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

// ---- randomized verification configs ----

struct TrialConfig {
  DataSource data;
  KernelSpec spec;
  std::size_t r = 0;
  std::size_t m = 0;
};

/// Deterministic mixed cluster/spectrum trial generator used by the
/// randomized inequality suite (sizes in [50, 300]).
TrialConfig make_random_trial_config(std::size_t index, std::uint64_t master_seed);

}  // namespace nygap
