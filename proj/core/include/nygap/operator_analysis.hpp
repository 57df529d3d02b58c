#pragma once

#include <cstddef>
#include <vector>

#include "nygap/linalg.hpp"
#include "nygap/matrix.hpp"
#include "nygap/nystrom.hpp"

namespace nygap {

/// Coordinate matrices of the full-sample and subsample averaging operators in
/// the orthonormal eigenfunction basis of the full sample. Everything lives in
/// the p-dimensional span of eigenfunctions whose eigenvalues clear the rank
/// tolerance (the subsample's eigenfunctions lie inside that span because the
/// landmarks are drawn from the dataset itself).
struct CoordinateOperator {
  std::size_t p = 0;   // retained full-sample eigenfunctions
  std::size_t q = 0;   // retained subsample eigenfunctions
  std::size_t r = 0;   // comparison rank the operator was built for
  std::size_t n = 0;   // dataset size
  std::size_t m = 0;   // subsample size
  Matrix g;            // p x q inner products between the two eigenfunction families
  std::vector<double> d_diag;  // p eigenvalues of the full-sample operator
  Matrix b;            // p x p coordinate matrix of the subsample operator
  Matrix e;            // b - diag(d_diag)
  Matrix c;            // rank-r projector difference in coordinates
  double gap = 0.0;    // normalized eigengap at rank r
};

/// Stewart-style correction between the leading-r eigenspaces, with the
/// perturbation-condition diagnostics that accompany it.
struct PerturbationSolution {
  Matrix p;            // (p - r) x r
  double gamma = 0.0;
  double delta = 0.0;
  bool condition_met = false;  // normalized eigengap > 3 * ||E||_F
};

CoordinateOperator eigenfunction_coordinates(const EigenSystem& full_eig,
                                             const NystromModel& model, std::size_t n);

/// Hilbert-Schmidt distance between the two averaging operators; equals the
/// Frobenius norm of the coordinate difference matrix E.
double hs_norm_diff(const CoordinateOperator& co);

/// Operator norm of the rank-r projector difference.
double delta_h_spectral_norm(const CoordinateOperator& co, std::size_t r);

/// (values[r-1] - values[r]) / n, 1-based rank as in the analysis.
double eigengap(const std::vector<double>& values, std::size_t r, std::size_t n);

struct GammaDelta {
  double gamma = 0.0;
  double delta = 0.0;
};

/// Off-diagonal block norm of E and the gap margin left after the two
/// diagonal block norms are subtracted. delta may be negative; it is
/// reported signed.
GammaDelta gamma_delta(const CoordinateOperator& co, std::size_t r, double gap);

/// Recovers the correction matrix P = G21 * G11^{-1} mapping the leading-r
/// full-sample eigenspace onto the subsample one. Throws when G11 is singular
/// (subspaces too far apart for the recovery to be meaningful).
PerturbationSolution recover_p(const CoordinateOperator& co, std::size_t r);

struct StewartResult {
  double gamma = 0.0;
  double delta = 0.0;
  Matrix p;
  bool condition_met = false;  // delta > 0 and 2*gamma < delta
  bool bound_ok = false;       // ||P||_F < 2*gamma/delta (when condition_met)
};

/// Direct check of the symmetric perturbation bound: eigendecomposes A and
/// A + E, recovers P between the leading-r subspaces, and evaluates the
/// Frobenius-norm condition and bound.
StewartResult stewart_verify(const SymMatrix& a, const SymMatrix& e, std::size_t r);

/// Reconstruction of the sampled rank-r matrix through the operator route,
/// (V_p L_p^{1/2}) G_r G_r^T (L_p^{1/2} V_p^T).
SymMatrix khat_via_operator_path(const EigenSystem& full_eig, const CoordinateOperator& co,
                                 std::size_t r, std::size_t n);

}  // namespace nygap
