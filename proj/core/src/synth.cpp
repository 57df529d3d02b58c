#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nygap/harness.hpp"
#include "nygap/rng.hpp"

namespace nygap {

PointSet synth_clusters(std::size_t k, std::size_t per_cluster, double separation,
                        double spread, std::size_t dim, std::uint64_t seed) {
  return synth_clusters_sizes(std::vector<std::size_t>(k, per_cluster), separation, spread,
                              dim, seed);
}

PointSet synth_clusters_sizes(const std::vector<std::size_t>& sizes, double separation,
                              double spread, std::size_t dim, std::uint64_t seed) {
  if (sizes.empty()) throw std::invalid_argument("synth_clusters: need k >= 1");
  if (dim == 0) throw std::invalid_argument("synth_clusters: need dim >= 1");
  if (spread < 0.0) throw std::invalid_argument("synth_clusters: spread must be >= 0");
  const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  if (total == 0) throw std::invalid_argument("synth_clusters: empty point set");

  Rng rng(mix_seed(seed, 0));
  PointSet ps;
  ps.points = Matrix(total, dim);
  std::size_t row = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    // center c sits at separation*(c+1) along axis c mod dim; any two centers
    // are at least `separation` apart
    const std::size_t axis = c % dim;
    const double offset = separation * static_cast<double>(c + 1);
    for (std::size_t i = 0; i < sizes[c]; ++i, ++row)
      for (std::size_t j = 0; j < dim; ++j)
        ps.points(row, j) = (j == axis ? offset : 0.0) + spread * rng.gaussian();
  }
  return ps;
}

SpectrumGram synth_gram_with_spectrum(const std::vector<double>& spectrum,
                                      std::uint64_t seed) {
  const std::size_t n = spectrum.size();
  if (n == 0) throw std::invalid_argument("synth_gram_with_spectrum: empty spectrum");
  for (std::size_t i = 0; i < n; ++i) {
    if (spectrum[i] < 0.0)
      throw std::invalid_argument("synth_gram_with_spectrum: negative spectrum entry");
    if (i > 0 && spectrum[i] > spectrum[i - 1])
      throw std::invalid_argument("synth_gram_with_spectrum: spectrum must be descending");
  }

  // random orthogonal Q from QR (modified Gram-Schmidt) of a Gaussian matrix
  Rng rng(mix_seed(seed, 1));
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.gaussian();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t jj = 0; jj < j; ++jj) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += q(i, j) * q(i, jj);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, jj);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw std::runtime_error("synth_gram_with_spectrum: degenerate QR");
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }

  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < n; ++l) acc += q(i, l) * spectrum[l] * q(j, l);
      k(i, j) = acc;
      k(j, i) = acc;
    }

  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, k(i, i));
  if (max_diag <= 0.0)
    throw std::invalid_argument("synth_gram_with_spectrum: zero spectrum");

  SpectrumGram out;
  out.gram = SymMatrix(k.scaled(1.0 / max_diag));
  out.effective_spectrum = spectrum;
  for (double& v : out.effective_spectrum) v /= max_diag;
  return out;
}

}  // namespace nygap
