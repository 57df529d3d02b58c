#include "nygap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace nygap {

namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      const double v = a[p * n + q];
      s += v * v;
    }
  return std::sqrt(2.0 * s);
}

// splitmix64; used only to seed deterministic start vectors.
std::uint64_t splitmix64_step(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

EigenSystem sym_eigen(const SymMatrix& sym) {
  const std::size_t n = sym.order();
  if (!sym.mat().all_finite())
    throw std::invalid_argument("sym_eigen: matrix has non-finite entries");

  std::vector<double> a(sym.mat().data());
  // vt holds V^T: row i is the i-th eigenvector candidate (contiguous updates).
  std::vector<double> vt(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) vt[i * n + i] = 1.0;

  const double norm_a = frobenius_norm(sym.mat());
  const double stop = 1e-12 * norm_a;

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal_norm(a, n) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        if (std::abs(apq) <= 1e-300) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;

        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          const double np_ = arp - s * (arq + tau * arp);
          const double nq_ = arq + s * (arp - tau * arq);
          a[r * n + p] = a[p * n + r] = np_;
          a[r * n + q] = a[q * n + r] = nq_;
        }
        double* vp = vt.data() + p * n;
        double* vq = vt.data() + q * n;
        for (std::size_t r = 0; r < n; ++r) {
          const double xp = vp[r];
          const double xq = vq[r];
          vp[r] = xp - s * (xq + tau * xp);
          vq[r] = xq + s * (xp - tau * xq);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i] > a[j * n + j];
  });

  EigenSystem eig;
  eig.values.resize(n);
  eig.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    eig.values[k] = a[src * n + src];
    const double* v = vt.data() + src * n;
    // sign convention: largest-magnitude component positive, lowest index wins ties
    std::size_t imax = 0;
    double vmax = std::abs(v[0]);
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v[i]) > vmax) {
        vmax = std::abs(v[i]);
        imax = i;
      }
    const double sign = (v[imax] < 0.0) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) eig.vectors(i, k) = sign * v[i];
  }
  return eig;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double frobenius_norm(const SymMatrix& a) { return frobenius_norm(a.mat()); }

double spectral_norm(const Matrix& a) {
  if (!a.all_finite())
    throw std::invalid_argument("spectral_norm: matrix has non-finite entries");
  const std::size_t m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) return 0.0;

  std::uint64_t seed = 0x2545f4914f6cdd1dULL;
  std::vector<double> x(n), z(m), y(n);
  for (std::size_t j = 0; j < n; ++j)
    x[j] = static_cast<double>(splitmix64_step(seed) >> 11) * 0x1.0p-53 - 0.5;
  double xn = 0.0;
  for (double v : x) xn += v * v;
  xn = std::sqrt(xn);
  if (xn == 0.0) x[0] = 1.0, xn = 1.0;
  for (double& v : x) v /= xn;

  double sigma = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    // z = A x
    for (std::size_t i = 0; i < m; ++i) {
      const double* ai = a.row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += ai[j] * x[j];
      z[i] = acc;
    }
    double zn = 0.0;
    for (double v : z) zn += v * v;
    zn = std::sqrt(zn);
    if (zn == 0.0) return 0.0;
    // y = A^T z
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double* ai = a.row(i);
      const double zi = z[i];
      for (std::size_t j = 0; j < n; ++j) y[j] += ai[j] * zi;
    }
    double yn = 0.0;
    for (double v : y) yn += v * v;
    yn = std::sqrt(yn);
    const double prev = sigma;
    sigma = zn;  // ||A x|| with ||x|| = 1
    if (yn == 0.0) return sigma;
    for (std::size_t j = 0; j < n; ++j) x[j] = y[j] / yn;
    if (iter > 2 && std::abs(sigma - prev) <= 1e-13 * std::max(1.0, sigma)) break;
  }
  return sigma;
}

double spectral_norm(const SymMatrix& a) { return spectral_norm(a.mat()); }

SymMatrix best_rank_r(const EigenSystem& eig, std::size_t r) {
  const std::size_t n = eig.order();
  if (r > n) throw std::invalid_argument("best_rank_r: rank exceeds order");
  Matrix out(n, n);
  for (std::size_t k = 0; k < r; ++k) {
    const double lam = eig.values[k];
    for (std::size_t i = 0; i < n; ++i) {
      const double li = lam * eig.vectors(i, k);
      if (li == 0.0) continue;
      double* oi = out.row(i);
      for (std::size_t j = 0; j < n; ++j) oi[j] += li * eig.vectors(j, k);
    }
  }
  return SymMatrix(std::move(out));
}

Matrix solve(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("solve: matrix must be square");
  if (b.rows() != n) throw std::invalid_argument("solve: rhs row count mismatch");

  Matrix lu = a;
  Matrix x = b;
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  const std::size_t k = b.cols();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(lu(i, col)) > std::abs(lu(piv, col))) piv = i;
    if (std::abs(lu(piv, col)) <= 1e-14 * std::max(scale, 1e-300))
      throw std::runtime_error("solve: singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
      for (std::size_t j = 0; j < k; ++j) std::swap(x(col, j), x(piv, j));
    }
    const double d = lu(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = lu(i, col) / d;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) lu(i, j) -= f * lu(col, j);
      for (std::size_t j = 0; j < k; ++j) x(i, j) -= f * x(col, j);
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t j = 0; j < k; ++j) {
      double acc = x(col, j);
      for (std::size_t jj = col + 1; jj < n; ++jj) acc -= lu(col, jj) * x(jj, j);
      x(col, j) = acc / lu(col, col);
    }
  }
  return x;
}

}  // namespace nygap
