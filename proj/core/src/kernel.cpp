#include "nygap/kernel.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace nygap {

namespace {

double squared_distance(const double* x, const double* y, std::size_t dim) {
  double s = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double d = x[k] - y[k];
    s += d * d;
  }
  return s;
}

void check_landmarks(std::size_t n, const std::vector<std::size_t>& idx) {
  std::set<std::size_t> seen;
  for (std::size_t i : idx) {
    if (i >= n)
      throw std::invalid_argument("landmark index " + std::to_string(i) + " out of range");
    if (!seen.insert(i).second)
      throw std::invalid_argument("duplicate landmark index " + std::to_string(i));
  }
}

}  // namespace

double mean_squared_distance(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n < 2)
    throw std::invalid_argument("mean_squared_distance: needs at least 2 points");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      total += squared_distance(ps.point(i), ps.point(j), ps.dim());
  return total / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

double rbf_eval(const double* x, const double* y, std::size_t dim, const KernelSpec& spec) {
  if (spec.family != KernelFamily::RBF)
    throw std::invalid_argument("rbf_eval: spec is not RBF");
  return std::exp(-spec.lambda * squared_distance(x, y, dim) / spec.d2);
}

double rbf_eval(const std::vector<double>& x, const std::vector<double>& y,
                const KernelSpec& spec) {
  if (x.size() != y.size()) throw std::invalid_argument("rbf_eval: dimension mismatch");
  return rbf_eval(x.data(), y.data(), x.size(), spec);
}

SymMatrix gram_matrix(const PointSet& ps, const KernelSpec& spec) {
  const std::size_t n = ps.size();
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rbf_eval(ps.point(i), ps.point(j), ps.dim(), spec);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return SymMatrix(std::move(k));
}

Matrix cross_gram(const PointSet& ps, const std::vector<std::size_t>& landmark_indices,
                  const KernelSpec& spec) {
  const std::size_t n = ps.size();
  check_landmarks(n, landmark_indices);
  Matrix kb(n, landmark_indices.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < landmark_indices.size(); ++j)
      kb(i, j) = rbf_eval(ps.point(i), ps.point(landmark_indices[j]), ps.dim(), spec);
  return kb;
}

Matrix cross_gram(const SymMatrix& gram, const std::vector<std::size_t>& landmark_indices) {
  const std::size_t n = gram.order();
  check_landmarks(n, landmark_indices);
  Matrix kb(n, landmark_indices.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < landmark_indices.size(); ++j)
      kb(i, j) = gram(i, landmark_indices[j]);
  return kb;
}

SymMatrix submatrix(const SymMatrix& gram, const std::vector<std::size_t>& indices) {
  check_landmarks(gram.order(), indices);
  const std::size_t m = indices.size();
  if (m == 0) throw std::invalid_argument("submatrix: empty index set");
  Matrix s(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) s(i, j) = gram(indices[i], indices[j]);
  return SymMatrix(std::move(s));
}

}  // namespace nygap
