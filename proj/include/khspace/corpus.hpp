#pragma once

#include <cstdint>

#include "khspace/field.hpp"

namespace kh {

/// Deterministic 64-bit stream (splitmix64); identical across platforms.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }     // [0,1)
  double symmetric() { return 2.0 * uniform() - 1.0; }                            // [-1,1)
  cplx unit_disc() {
    double a = two_pi * uniform();
    double r = std::sqrt(uniform());
    return cplx{r * std::cos(a), r * std::sin(a)};
  }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return r.next();
}

struct CorpusSpec {
  int band = 8;              // max |j| per axis with nonzero coefficients
  double decay = 1.0;        // coefficient envelope <xi>^{-decay}
  bool hermitian = false;    // real-valued field
  double tail_amplitude = 0.0;  // relative amplitude of the decaying full-band tail
};

/// Band-limited random field; coefficients depend only on (seed, bin), so the
/// same (seed, band) reproduces the same physical field on any refinement
/// M -> 2M of the grid.
Field random_band_limited(const GridSpec& g, std::uint64_t seed, const CorpusSpec& spec = {});

std::vector<Field> make_corpus(const GridSpec& g, std::uint64_t seed, int count,
                               const CorpusSpec& spec = {});

}  // namespace kh
