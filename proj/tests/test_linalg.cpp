#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nygap/linalg.hpp"
#include "nygap/matrix.hpp"
#include "test_util.hpp"

using namespace nygap;
using namespace nygap::testutil;

namespace {

double eigen_residual(const SymMatrix& a, const EigenSystem& eig) {
  const std::size_t n = a.order();
  Matrix lam(n, n);
  for (std::size_t i = 0; i < n; ++i) lam(i, i) = eig.values[i];
  const Matrix rec = eig.vectors * lam * eig.vectors.transposed();
  return frobenius_norm(a.mat() - rec);
}

double orthonormality_error(const Matrix& v) {
  const Matrix gram = v.transposed() * v;
  return max_abs_diff(gram, Matrix::identity(v.cols()));
}

}  // namespace

TEST_CASE("sym_eigen: analytic 2x2") {
  SymMatrix a(2);
  a.set(0, 0, 2.0);
  a.set(1, 1, 2.0);
  a.set(0, 1, 1.0);
  const EigenSystem eig = sym_eigen(a);
  CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  const double s = 1.0 / std::sqrt(2.0);
  // sign convention fixes both columns to positive leading entries
  CHECK(std::abs(eig.vectors(0, 0) - s) < 1e-10);
  CHECK(std::abs(eig.vectors(1, 0) - s) < 1e-10);
  CHECK(std::abs(std::abs(eig.vectors(0, 1)) - s) < 1e-10);
  CHECK(std::abs(std::abs(eig.vectors(1, 1)) - s) < 1e-10);
  CHECK(eig.vectors(0, 1) * eig.vectors(1, 1) < 0.0);
}

TEST_CASE("sym_eigen: diagonal input sorts descending") {
  const EigenSystem eig = sym_eigen(diag_sym({1.0, 2.0, 3.0}));
  CHECK(eig.values == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("sym_eigen: random symmetric reconstruction and orthonormality") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const SymMatrix a = random_symmetric(8, seed);
    const EigenSystem eig = sym_eigen(a);
    CHECK(eigen_residual(a, eig) <= 1e-10 * frobenius_norm(a));
    CHECK(orthonormality_error(eig.vectors) < 1e-10);
    for (std::size_t i = 1; i < eig.order(); ++i)
      CHECK(eig.values[i - 1] >= eig.values[i]);
  }
}

TEST_CASE("sym_eigen: deterministic for fixed input") {
  const SymMatrix a = random_symmetric(10, 77);
  const EigenSystem e1 = sym_eigen(a);
  const EigenSystem e2 = sym_eigen(a);
  CHECK(e1.values == e2.values);
  CHECK(e1.vectors.data() == e2.vectors.data());
}

TEST_CASE("sym_eigen: rejects non-finite input") {
  SymMatrix a(2);
  a.set(0, 1, std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS_AS(sym_eigen(a), std::invalid_argument);
}

TEST_CASE("spectral_norm: identity and signed diagonal") {
  CHECK(spectral_norm(SymMatrix(Matrix::identity(3))) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_norm(diag_sym({-5.0, 2.0})) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("spectral_norm: rank-1 rectangular [[3,4],[0,0]]") {
  Matrix a(2, 2);
  a(0, 0) = 3.0;
  a(0, 1) = 4.0;
  CHECK(spectral_norm(a) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("spectral_norm: agrees with eigensolver oracle on A^T A") {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    const Matrix a = random_matrix(10, 10, seed);
    const double got = spectral_norm(a);
    const SymMatrix ata(a.transposed() * a);
    const double want = std::sqrt(sym_eigen(ata).values[0]);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("frobenius_norm: zero, 3-4-5, and double-sum oracle") {
  CHECK(frobenius_norm(Matrix(4, 3)) == 0.0);
  Matrix a(2, 2);
  a(0, 0) = 3.0;
  a(0, 1) = 4.0;
  CHECK(frobenius_norm(a) == doctest::Approx(5.0).epsilon(1e-15));

  const Matrix r = random_matrix(7, 5, 33);
  double s = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) s += r(i, j) * r(i, j);
  CHECK(frobenius_norm(r) == doctest::Approx(std::sqrt(s)).epsilon(1e-12));
}

TEST_CASE("spectral norm never exceeds Frobenius norm") {
  for (std::uint64_t seed = 40; seed < 48; ++seed) {
    const Matrix a = random_matrix(6, 9, seed);
    CHECK(spectral_norm(a) <= frobenius_norm(a) * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("best_rank_r: diagonal truncation and full-rank identity") {
  const EigenSystem eig = sym_eigen(diag_sym({3.0, 2.0, 1.0}));
  const SymMatrix t = best_rank_r(eig, 2);
  CHECK(max_abs_diff(t, diag_sym({3.0, 2.0, 0.0})) < 1e-12);

  const SymMatrix a = random_psd(9, 5);
  const EigenSystem full = sym_eigen(a);
  CHECK(max_abs_diff(best_rank_r(full, 9), a) < 1e-9 * frobenius_norm(a));
}

TEST_CASE("best_rank_r: rejects r out of range") {
  const EigenSystem eig = sym_eigen(diag_sym({2.0, 1.0}));
  CHECK_THROWS_AS(best_rank_r(eig, 3), std::invalid_argument);
}

TEST_CASE("best_rank_r: matches brute-force truncation oracle") {
  const SymMatrix a = random_psd(12, 21);
  const EigenSystem eig = sym_eigen(a);
  const std::size_t r = 3;
  // oracle: sum the outer products entry by entry, coded independently
  Matrix want(12, 12);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = 0; j < 12; ++j)
        want(i, j) += eig.values[k] * eig.vectors(i, k) * eig.vectors(j, k);
  CHECK(max_abs_diff(best_rank_r(eig, r).mat(), want) < 1e-10);
}

TEST_CASE("best_rank_r: minimality spot check against random low-rank competitors") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 6 + rng.below(3);
    const std::size_t r = 1 + rng.below(4);
    const SymMatrix a = random_psd(n, 1000 + trial);
    const EigenSystem eig = sym_eigen(a);
    const double best = frobenius_norm(a.mat() - best_rank_r(eig, r).mat());
    const Matrix f = random_matrix(n, r, 2000 + trial);
    const SymMatrix b(f * f.transposed());
    CHECK(best <= frobenius_norm(a.mat() - b.mat()) + 1e-9);
  }
}

TEST_CASE("solve: recovers known solution and rejects singular systems") {
  const Matrix a = random_matrix(6, 6, 8);
  const Matrix x = random_matrix(6, 2, 9);
  const Matrix b = a * x;
  CHECK(max_abs_diff(solve(a, b), x) < 1e-9);

  Matrix s(2, 2);
  s(0, 0) = 1.0;
  s(0, 1) = 2.0;
  s(1, 0) = 2.0;
  s(1, 1) = 4.0;
  CHECK_THROWS_AS(solve(s, Matrix::identity(2)), std::runtime_error);
}
