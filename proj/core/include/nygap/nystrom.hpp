#pragma once

#include <cstdint>
#include <vector>

#include "nygap/kernel.hpp"
#include "nygap/linalg.hpp"
#include "nygap/matrix.hpp"

namespace nygap {

/// Relative threshold below which a sample eigenvalue counts as zero.
inline constexpr double kRankTolerance = 1e-12;

/// Thrown when the requested rank runs past the numerical rank of the
/// sample kernel matrix.
class RankDeficiencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Landmark subset plus everything needed to form the low-rank reconstruction.
struct NystromModel {
  std::vector<std::size_t> indices;  // m distinct indices into [0, N)
  Matrix kb;                         // N x m cross-kernel matrix
  EigenSystem sample_eig;            // spectrum of the m x m sample matrix
  std::size_t rank = 0;
  std::size_t n = 0;

  std::size_t m() const { return indices.size(); }
};

/// m distinct indices drawn uniformly over m-subsets of [0, n); deterministic
/// per seed (partial Fisher-Yates on mt19937_64).
std::vector<std::size_t> sample_uniform(std::size_t n, std::size_t m, std::uint64_t seed);

NystromModel build_model(const PointSet& ps, const KernelSpec& spec,
                         std::vector<std::size_t> indices, std::size_t r);
NystromModel build_model(const SymMatrix& gram, std::vector<std::size_t> indices,
                         std::size_t r);

/// Rank-r reconstruction from sampled columns, assembled as
/// (Kb U_r) diag(1/eigenvalue) (Kb U_r)^T.
SymMatrix approximate(const NystromModel& model);

/// Frobenius/spectral distances of the sampled reconstruction against the
/// source matrix, and the excess over the optimal rank-r truncation. The
/// additional errors are reported signed.
struct AdditionalError {
  double frob_additional = 0.0;
  double spec_additional = 0.0;
  double frob_total = 0.0;
  double spec_total = 0.0;
};

AdditionalError additional_error(const SymMatrix& k, const SymMatrix& k_r,
                                 const SymMatrix& k_hat_r);

}  // namespace nygap
