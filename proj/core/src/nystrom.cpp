#include "nygap/nystrom.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "nygap/rng.hpp"

namespace nygap {

std::vector<std::size_t> sample_uniform(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m == 0 || m > n)
    throw std::invalid_argument("sample_uniform: need 1 <= m <= n, got m=" +
                                std::to_string(m) + " n=" + std::to_string(n));
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  return pool;
}

namespace {

NystromModel finish_model(std::vector<std::size_t> indices, Matrix kb, SymMatrix sample,
                          std::size_t r, std::size_t n) {
  if (r == 0 || r > indices.size())
    throw std::invalid_argument("build_model: need 1 <= r <= m");
  NystromModel model;
  model.indices = std::move(indices);
  model.kb = std::move(kb);
  model.sample_eig = sym_eigen(sample);
  model.rank = r;
  model.n = n;
  const double lead = model.sample_eig.values.front();
  if (model.sample_eig.values[r - 1] <= kRankTolerance * std::max(lead, 0.0))
    throw RankDeficiencyError("rank deficiency at requested rank " + std::to_string(r) +
                              ": sample eigenvalue " +
                              std::to_string(model.sample_eig.values[r - 1]));
  return model;
}

}  // namespace

NystromModel build_model(const PointSet& ps, const KernelSpec& spec,
                         std::vector<std::size_t> indices, std::size_t r) {
  Matrix kb = cross_gram(ps, indices, spec);
  const std::size_t m = indices.size();
  Matrix sample(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) sample(i, j) = kb(indices[i], j);
  return finish_model(std::move(indices), std::move(kb), SymMatrix(std::move(sample)), r,
                      ps.size());
}

NystromModel build_model(const SymMatrix& gram, std::vector<std::size_t> indices,
                         std::size_t r) {
  Matrix kb = cross_gram(gram, indices);
  SymMatrix sample = submatrix(gram, indices);
  return finish_model(std::move(indices), std::move(kb), std::move(sample), r, gram.order());
}

SymMatrix approximate(const NystromModel& model) {
  const std::size_t n = model.n;
  const std::size_t r = model.rank;
  // scaled = Kb U_r diag(1/sqrt(eig)); K_hat_r = scaled scaled^T
  Matrix scaled(n, r);
  for (std::size_t j = 0; j < r; ++j) {
    const double inv_sqrt = 1.0 / std::sqrt(model.sample_eig.values[j]);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < model.m(); ++k)
        acc += model.kb(i, k) * model.sample_eig.vectors(k, j);
      scaled(i, j) = acc * inv_sqrt;
    }
  }
  return SymMatrix(scaled * scaled.transposed());
}

AdditionalError additional_error(const SymMatrix& k, const SymMatrix& k_r,
                                 const SymMatrix& k_hat_r) {
  if (k.order() != k_r.order() || k.order() != k_hat_r.order())
    throw std::invalid_argument("additional_error: order mismatch");
  AdditionalError e;
  const Matrix diff_hat = k.mat() - k_hat_r.mat();
  const Matrix diff_best = k.mat() - k_r.mat();
  e.frob_total = frobenius_norm(diff_hat);
  e.spec_total = spectral_norm(diff_hat);
  e.frob_additional = e.frob_total - frobenius_norm(diff_best);
  e.spec_additional = e.spec_total - spectral_norm(diff_best);
  return e;
}

}  // namespace nygap
