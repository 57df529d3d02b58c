// Acceptance gate: one test case per criterion, each printing a PASS/FAIL line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "nygap/harness.hpp"
#include "nygap/kernel.hpp"
#include "nygap/linalg.hpp"
#include "nygap/nystrom.hpp"
#include "nygap/operator_analysis.hpp"
#include "nygap/rng.hpp"
#include "test_util.hpp"

using namespace nygap;
using namespace nygap::testutil;

namespace {

void report_line(int criterion, const char* name, bool ok) {
  std::printf("[criterion %d] %s: %s\n", criterion, name, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("criterion 1: inequality suite over randomized trials") {
  const std::size_t trials = 200;
  std::vector<TrialReport> reports(trials);
  parallel_for(trials, 0, [&](std::size_t i) {
    const TrialConfig cfg = make_random_trial_config(i, 20260823);
    reports[i] = run_trial(cfg.data, cfg.spec, cfg.r, cfg.m, mix_seed(20260823, i));
  });
  std::size_t failures = 0;
  std::size_t gap_condition_trials = 0;
  for (const TrialReport& rep : reports) {
    if (!rep.bounds.all_applicable_pass()) ++failures;
    if (rep.bounds.gap_condition) ++gap_condition_trials;
  }
  // the suite must actually exercise the gap-conditioned theorems
  CHECK(gap_condition_trials >= 20);
  CHECK(failures == 0);
  report_line(1, "inequality suite (200 randomized trials)",
              failures == 0 && gap_condition_trials >= 20);
}

TEST_CASE("criterion 2: two-path reconstruction equivalence") {
  std::size_t failures = 0;
  const std::size_t instances = 100;
  parallel_for(instances, 0, [&](std::size_t i) {
    const std::size_t n = 20 + i % 31;  // N <= 50
    Rng rng(mix_seed(77, i));
    Matrix pts(n, 3);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < 3; ++b) pts(a, b) = 3.0 * rng.gaussian();
    const PointSet ps{std::move(pts)};
    KernelSpec spec;
    spec.d2 = mean_squared_distance(ps);
    const SymMatrix k = gram_matrix(ps, spec);
    const EigenSystem eig = sym_eigen(k);
    const std::size_t r = 2 + i % 3;
    const NystromModel model =
        build_model(k, sample_uniform(n, n / 2, mix_seed(88, i)), r);
    const CoordinateOperator co = eigenfunction_coordinates(eig, model, n);
    if (max_abs_diff(approximate(model), khat_via_operator_path(eig, co, r, n)) > 1e-8) {
      static std::mutex mu;
      std::lock_guard<std::mutex> lock(mu);
      ++failures;
    }
  });
  CHECK(failures == 0);
  report_line(2, "two-path reconstruction (100 instances)", failures == 0);
}

TEST_CASE("criterion 3: closed-form operator distance matches the raw double sum") {
  std::size_t failures = 0;
  for (std::size_t t = 0; t < 10; ++t) {
    const std::size_t n = 12 + t % 9;  // N <= 20
    PointSet ps{random_matrix(n, 3, mix_seed(99, t)).scaled(3.0)};
    KernelSpec spec;
    spec.d2 = mean_squared_distance(ps);
    const SymMatrix k = gram_matrix(ps, spec);
    const EigenSystem eig = sym_eigen(k);
    const NystromModel model =
        build_model(k, sample_uniform(n, n / 2, mix_seed(111, t)), 2);
    const CoordinateOperator co = eigenfunction_coordinates(eig, model, n);

    // raw oracle: eigenfunction values through kernel evaluations only
    auto phi = [&](std::size_t i, std::size_t a) {
      double acc = 0.0;
      for (std::size_t b = 0; b < n; ++b)
        acc += eig.vectors(b, i) *
               rbf_eval(ps.point(b), ps.point(a), ps.dim(), spec);
      return acc / std::sqrt(eig.values[i]);
    };
    double total = 0.0;
    for (std::size_t i = 0; i < co.p; ++i)
      for (std::size_t j = 0; j < co.p; ++j) {
        double lm = 0.0;
        for (std::size_t b = 0; b < model.m(); ++b)
          lm += phi(i, model.indices[b]) * phi(j, model.indices[b]);
        lm /= static_cast<double>(model.m());
        double ln = 0.0;
        for (std::size_t a = 0; a < n; ++a) ln += phi(i, a) * phi(j, a);
        ln /= static_cast<double>(n);
        total += (lm - ln) * (lm - ln);
      }
    if (std::abs(hs_norm_diff(co) - std::sqrt(total)) > 1e-10) ++failures;
  }
  CHECK(failures == 0);
  report_line(3, "operator distance vs raw double-sum oracle", failures == 0);
}

TEST_CASE("criterion 4: concentration bound coverage") {
  const PointSet ps = synth_clusters(4, 100, 6.0, 1.0, 4, 5);  // N = 400
  KernelSpec spec;
  spec.d2 = 0.0;
  const CoverageResult res =
      coverage_experiment(DataSource{ps}, spec, 50, 0.1, 200, 13, 0);
  CHECK(res.samples.size() == 200);
  CHECK(res.coverage >= 0.90);
  report_line(4, "concentration coverage (N=400, m=50, 200 resamplings)",
              res.coverage >= 0.90);
}

TEST_CASE("criterion 5: symmetric perturbation bound") {
  // closed-form 2x2 case
  const SymMatrix a2 = diag_sym({2.0, 0.0});
  SymMatrix e2(2);
  e2.set(0, 1, 0.1);
  const StewartResult two = stewart_verify(a2, e2, 1);
  const double want = (std::sqrt(1.01) - 1.0) / 0.1;
  const bool closed_form_ok = two.condition_met && two.bound_ok &&
                              std::abs(two.p(0, 0) - want) <= 1e-6;
  CHECK(closed_form_ok);

  // randomized sweep with the gap dominating the perturbation
  Rng rng(321);
  std::size_t failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng.below(6);
    const std::size_t r = 1 + rng.below(n - 1);
    std::vector<double> vals(n);
    double v = 12.0;
    for (std::size_t i = 0; i < n; ++i) {
      vals[i] = v;
      v -= (i + 1 == r) ? 6.0 : 0.3;
    }
    SymMatrix e(random_symmetric(n, mix_seed(555, trial)));
    e = SymMatrix(e.mat().scaled(0.05 * 6.0 / frobenius_norm(e)));
    const StewartResult res = stewart_verify(diag_sym(vals), e, r);
    if (!res.condition_met || !res.bound_ok) ++failures;
  }
  CHECK(failures == 0);
  report_line(5, "perturbation bound (2x2 closed form + 50 random pairs)",
              closed_form_ok && failures == 0);
}

TEST_CASE("criterion 6: convergence rate in the sample count") {
  const PointSet ps = synth_clusters_sizes({334, 333, 333}, 8.0, 1.2, 5, 29);
  KernelSpec spec;
  spec.d2 = 0.0;
  const RateResult res = rate_experiment(DataSource{ps}, resolve_kernel(DataSource{ps}, spec),
                                         3, {50, 100, 200, 400}, 20, 31, 0);
  CHECK(res.alpha >= 0.35);
  std::printf("  fitted exponent alpha = %.4f (%zu excluded)\n", res.alpha,
              res.excluded_points);
  report_line(6, "rate fit alpha >= 0.35 (N=1000, 3 clusters)", res.alpha >= 0.35);
}

TEST_CASE("criterion 7: additional error is inversely related to the eigengap") {
  const PointSet ps = synth_clusters_sizes({100, 70, 50, 35, 25, 20}, 4.0, 1.5, 6, 43);
  KernelSpec spec;
  spec.d2 = 0.0;
  std::vector<std::size_t> ranks;
  for (std::size_t r = 1; r <= 20; ++r) ranks.push_back(r);
  const CurveSeries cs =
      figure1_experiment(DataSource{ps}, resolve_kernel(DataSource{ps}, spec), ranks,
                         ps.size() / 5, 20, 47, 0);
  const double rho = spearman(cs.at("eigengap"), cs.at("additional_frob_mean"));
  std::printf("  spearman(eigengap, additional error) = %.4f\n", rho);
  CHECK(rho <= -0.3);
  report_line(7, "eigengap vs additional error rank correlation <= -0.3", rho <= -0.3);
}

TEST_CASE("criterion 8: degenerate exactness and eigensolver accuracy") {
  bool ok = true;

  // full-sample trials leave no sampling error
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const PointSet ps = synth_clusters(3, 25, 5.0, 1.0, 3, seed);
    KernelSpec spec;
    spec.d2 = 0.0;
    const TrialReport rep = run_trial(DataSource{ps}, spec, 3, ps.size(), seed);
    const double tol = 1e-8 * static_cast<double>(ps.size());
    if (rep.hs > tol || rep.dh_norm > tol || rep.bounds.k_diff_frob > tol ||
        std::abs(rep.frob_additional) > tol)
      ok = false;
    CHECK(rep.hs <= tol);
    CHECK(rep.bounds.k_diff_frob <= tol);
  }

  // eigensolver quality at 200x200
  for (std::uint64_t seed = 11; seed <= 12; ++seed) {
    const SymMatrix a = random_symmetric(200, seed);
    const EigenSystem eig = sym_eigen(a);
    Matrix lam(200, 200);
    for (std::size_t i = 0; i < 200; ++i) lam(i, i) = eig.values[i];
    const double rec =
        frobenius_norm(a.mat() - eig.vectors * lam * eig.vectors.transposed()) /
        frobenius_norm(a);
    const double orth = max_abs_diff(eig.vectors.transposed() * eig.vectors,
                                     Matrix::identity(200));
    if (rec > 1e-9 || orth > 1e-9) ok = false;
    CHECK(rec <= 1e-9);
    CHECK(orth <= 1e-9);
  }
  report_line(8, "degenerate exactness and eigensolver accuracy", ok);
}

TEST_CASE("criterion 9: deterministic command-line outputs") {
  const std::string cli = NYGAP_CLI_PATH;
  auto run = [&](const std::string& args, const std::string& out) {
    const std::string cmd = "\"" + cli + "\" " + args + " --output " + out;
    return std::system(cmd.c_str()) == 0;
  };

  bool ok = true;

  // identical invocations are byte-identical
  REQUIRE(run("trial --synth clusters:k=3,per=40,sep=6,spread=1,dim=3 --m 40 --rank 3 "
              "--seed 11",
              "acc9_a.json"));
  REQUIRE(run("trial --synth clusters:k=3,per=40,sep=6,spread=1,dim=3 --m 40 --rank 3 "
              "--seed 11",
              "acc9_b.json"));
  const std::string a = slurp("acc9_a.json");
  ok = ok && !a.empty() && a == slurp("acc9_b.json");
  CHECK(a == slurp("acc9_b.json"));

  // parallel and serial execution agree byte for byte
  REQUIRE(run("figure1 --synth clusters:k=3,per=40,sep=6,spread=1,dim=3 --ranks 1..6 "
              "--m 30 --trials 8 --seed 13 --threads 1 --format csv",
              "acc9_serial.csv"));
  REQUIRE(run("figure1 --synth clusters:k=3,per=40,sep=6,spread=1,dim=3 --ranks 1..6 "
              "--m 30 --trials 8 --seed 13 --threads 4 --format csv",
              "acc9_parallel.csv"));
  const std::string serial = slurp("acc9_serial.csv");
  ok = ok && !serial.empty() && serial == slurp("acc9_parallel.csv");
  CHECK(serial == slurp("acc9_parallel.csv"));

  for (const char* f : {"acc9_a.json", "acc9_b.json", "acc9_serial.csv",
                        "acc9_parallel.csv"})
    std::remove(f);
  report_line(9, "byte-identical reruns and parallel/serial agreement", ok);
}
