#include "nygap/operator_analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nygap {

namespace {

std::size_t count_above_tolerance(const std::vector<double>& values) {
  if (values.empty()) return 0;
  const double cutoff = kRankTolerance * std::max(values.front(), 0.0);
  std::size_t count = 0;
  while (count < values.size() && values[count] > cutoff) ++count;
  return count;
}

double block_frobenius(const Matrix& a, std::size_t r0, std::size_t r1, std::size_t c0,
                       std::size_t c1) {
  double s = 0.0;
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

CoordinateOperator eigenfunction_coordinates(const EigenSystem& full_eig,
                                             const NystromModel& model, std::size_t n) {
  CoordinateOperator co;
  co.n = n;
  co.m = model.m();
  co.r = model.rank;
  co.p = count_above_tolerance(full_eig.values);
  co.q = count_above_tolerance(model.sample_eig.values);
  if (co.p < co.r || co.q < co.r)
    throw std::invalid_argument(
        "eigenfunction_coordinates: spectrum rank below comparison rank (p=" +
        std::to_string(co.p) + " q=" + std::to_string(co.q) + " r=" +
        std::to_string(co.r) + ")");

  const std::size_t p = co.p, q = co.q, m = co.m;

  // G_ik = (V^T Kb U)_ik / sqrt(lambda_i * sample_lambda_k)
  Matrix vt_kb(p, m);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      double acc = 0.0;
      for (std::size_t a = 0; a < n; ++a) acc += full_eig.vectors(a, i) * model.kb(a, k);
      vt_kb(i, k) = acc;
    }
  co.g = Matrix(p, q);
  for (std::size_t i = 0; i < p; ++i) {
    const double inv_li = 1.0 / std::sqrt(full_eig.values[i]);
    for (std::size_t k = 0; k < q; ++k) {
      double acc = 0.0;
      for (std::size_t a = 0; a < m; ++a) acc += vt_kb(i, a) * model.sample_eig.vectors(a, k);
      co.g(i, k) = acc * inv_li / std::sqrt(model.sample_eig.values[k]);
    }
  }

  co.d_diag.assign(full_eig.values.begin(), full_eig.values.begin() + p);
  for (double& v : co.d_diag) v /= static_cast<double>(n);

  co.b = Matrix(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < q; ++k)
        acc += model.sample_eig.values[k] * co.g(i, k) * co.g(j, k);
      acc /= static_cast<double>(m);
      co.b(i, j) = acc;
      co.b(j, i) = acc;
    }

  co.e = co.b;
  for (std::size_t i = 0; i < p; ++i) co.e(i, i) -= co.d_diag[i];

  const std::size_t r = co.r;
  Matrix gr = co.g.block(0, p, 0, r);
  co.c = gr * gr.transposed();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) co.c(i, j) = -co.c(i, j);
  for (std::size_t i = 0; i < r; ++i) co.c(i, i) += 1.0;

  co.gap = (r < full_eig.order()) ? eigengap(full_eig.values, r, n) : 0.0;
  return co;
}

double hs_norm_diff(const CoordinateOperator& co) { return frobenius_norm(co.e); }

double delta_h_spectral_norm(const CoordinateOperator& co, std::size_t r) {
  if (r > co.p || r > co.q)
    throw std::invalid_argument("delta_h_spectral_norm: rank exceeds basis dimension");
  if (r == co.r) return spectral_norm(co.c);
  Matrix gr = co.g.block(0, co.p, 0, r);
  Matrix c = gr * gr.transposed();
  for (std::size_t i = 0; i < co.p; ++i)
    for (std::size_t j = 0; j < co.p; ++j) c(i, j) = -c(i, j);
  for (std::size_t i = 0; i < r; ++i) c(i, i) += 1.0;
  return spectral_norm(c);
}

double eigengap(const std::vector<double>& values, std::size_t r, std::size_t n) {
  if (r == 0 || r >= values.size())
    throw std::invalid_argument("eigengap: rank out of range");
  return (values[r - 1] - values[r]) / static_cast<double>(n);
}

GammaDelta gamma_delta(const CoordinateOperator& co, std::size_t r, double gap) {
  if (r > co.p) throw std::invalid_argument("gamma_delta: rank exceeds basis dimension");
  GammaDelta gd;
  gd.gamma = block_frobenius(co.e, r, co.p, 0, r);
  gd.delta = gap - block_frobenius(co.e, 0, r, 0, r) - block_frobenius(co.e, r, co.p, r, co.p);
  return gd;
}

PerturbationSolution recover_p(const CoordinateOperator& co, std::size_t r) {
  if (r > co.p || r > co.q)
    throw std::invalid_argument("recover_p: rank exceeds basis dimension");
  PerturbationSolution sol;
  const Matrix m1 = co.g.block(0, r, 0, r);
  const Matrix m2 = co.g.block(r, co.p, 0, r);
  try {
    // P = M2 M1^{-1}, via M1^T P^T = M2^T
    sol.p = solve(m1.transposed(), m2.transposed()).transposed();
  } catch (const std::runtime_error&) {
    throw std::runtime_error("recover_p: subspaces too far apart (leading block singular)");
  }
  const GammaDelta gd = gamma_delta(co, r, co.gap);
  sol.gamma = gd.gamma;
  sol.delta = gd.delta;
  sol.condition_met = co.gap > 3.0 * hs_norm_diff(co);
  return sol;
}

StewartResult stewart_verify(const SymMatrix& a, const SymMatrix& e, std::size_t r) {
  const std::size_t n = a.order();
  if (e.order() != n) throw std::invalid_argument("stewart_verify: order mismatch");
  if (r == 0 || r >= n) throw std::invalid_argument("stewart_verify: need 0 < r < order");

  const EigenSystem base = sym_eigen(a);
  const Matrix e_coords = base.vectors.transposed() * e.mat() * base.vectors;

  StewartResult res;
  res.gamma = block_frobenius(e_coords, r, n, 0, r);
  res.delta = base.values[r - 1] - base.values[r] -
              block_frobenius(e_coords, 0, r, 0, r) - block_frobenius(e_coords, r, n, r, n);
  res.condition_met = res.delta > 0.0 && 2.0 * res.gamma < res.delta;

  const EigenSystem perturbed = sym_eigen(SymMatrix(a.mat() + e.mat()));
  const Matrix z = base.vectors.transposed() * perturbed.vectors.block(0, n, 0, r);
  res.p = solve(z.block(0, r, 0, r).transposed(), z.block(r, n, 0, r).transposed()).transposed();
  // tolerance keeps the degenerate E = 0 case (P and bound both zero) passing
  if (res.condition_met)
    res.bound_ok = frobenius_norm(res.p) <= 2.0 * res.gamma / res.delta + 1e-12;
  return res;
}

SymMatrix khat_via_operator_path(const EigenSystem& full_eig, const CoordinateOperator& co,
                                 std::size_t r, std::size_t n) {
  if (r > co.p || r > co.q)
    throw std::invalid_argument("khat_via_operator_path: rank exceeds basis dimension");
  // M = V_p L_p^{1/2} G_r, result M M^T
  Matrix m(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < co.p; ++k)
        acc += full_eig.vectors(i, k) * std::sqrt(full_eig.values[k]) * co.g(k, j);
      m(i, j) = acc;
    }
  return SymMatrix(m * m.transposed());
}

}  // namespace nygap
