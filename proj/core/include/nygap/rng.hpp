#pragma once

#include <cstdint>
#include <random>

namespace nygap {

/// splitmix64 scramble; combines a master seed with a stream index so that
/// concurrent trials draw from disjoint, reproducible streams.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded generator: mt19937_64 behind a thin wrapper. Integer draws use an
/// own rejection loop (not std::uniform_int_distribution) so the sequence is
/// pinned by this code alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % bound;
  }

  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  double gaussian() { return normal_(gen_); }

  std::mt19937_64& engine() { return gen_; }

  static const char* algorithm() { return "mt19937_64+splitmix64"; }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace nygap
