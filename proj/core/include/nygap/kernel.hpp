#pragma once

#include <cstddef>
#include <vector>

#include "nygap/matrix.hpp"

namespace nygap {

/// Finite collection of real vectors, one per row.
struct PointSet {
  Matrix points;  // N x dim

  std::size_t size() const { return points.rows(); }
  std::size_t dim() const { return points.cols(); }
  const double* point(std::size_t i) const { return points.row(i); }
};

enum class KernelFamily { RBF, Precomputed };

/// RBF parameterization kappa(x, x') = exp(-lambda * ||x - x'||^2 / d2).
/// `Precomputed` routes a supplied Gram matrix through the same pipeline.
struct KernelSpec {
  KernelFamily family = KernelFamily::RBF;
  double lambda = 10.0;
  double d2 = 1.0;
};

/// Mean of ||x_i - x_j||^2 over unordered distinct pairs. Requires N >= 2.
double mean_squared_distance(const PointSet& ps);

double rbf_eval(const double* x, const double* y, std::size_t dim, const KernelSpec& spec);
double rbf_eval(const std::vector<double>& x, const std::vector<double>& y,
                const KernelSpec& spec);

SymMatrix gram_matrix(const PointSet& ps, const KernelSpec& spec);

/// N x m matrix of kernel values against the landmark subset; column j equals
/// column landmark_indices[j] of the full Gram matrix.
Matrix cross_gram(const PointSet& ps, const std::vector<std::size_t>& landmark_indices,
                  const KernelSpec& spec);
Matrix cross_gram(const SymMatrix& gram, const std::vector<std::size_t>& landmark_indices);

/// Principal submatrix gram[indices, indices].
SymMatrix submatrix(const SymMatrix& gram, const std::vector<std::size_t>& indices);

}  // namespace nygap
