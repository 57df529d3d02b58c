#pragma once

#include <vector>

#include "nygap/matrix.hpp"

namespace nygap {

/// Full spectrum of a symmetric matrix: eigenvalues in descending order,
/// eigenvectors as orthonormal columns of `vectors`, column i pairing values[i].
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;

  std::size_t order() const { return values.size(); }
};

/// Eigendecomposition by cyclic Jacobi rotations. Converges when the
/// off-diagonal Frobenius mass drops below 1e-12 * ||A||_F (100 sweeps cap).
/// Each eigenvector is scaled so its largest-magnitude component is positive,
/// ties broken by lowest index; output is deterministic for a fixed input.
EigenSystem sym_eigen(const SymMatrix& a);

/// Largest singular value, computed by power iteration on A^T A.
double spectral_norm(const Matrix& a);
double spectral_norm(const SymMatrix& a);

double frobenius_norm(const Matrix& a);
double frobenius_norm(const SymMatrix& a);

/// Sum of the top-r eigenpair outer products; r == order reconstructs the source.
SymMatrix best_rank_r(const EigenSystem& eig, std::size_t r);

/// Solves A X = B for square A by Gaussian elimination with partial pivoting.
Matrix solve(const Matrix& a, const Matrix& b);

}  // namespace nygap
