#include "khspace/corpus.hpp"

#include <cmath>

namespace kh {

namespace {

// Stable key for a signed bin index vector, independent of M.
std::uint64_t bin_key(const int* s, int n) {
  std::uint64_t key = 0;
  for (int a = 0; a < n; ++a) key = key * 8209ULL + static_cast<std::uint64_t>(s[a] + 4096);
  return key;
}

cplx bin_coefficient(std::uint64_t seed, const int* s, int n, bool hermitian) {
  int canon[max_dim];
  bool negate = false;
  if (hermitian) {
    // Use the lexicographically positive representative so c(-b) = conj(c(b)).
    int lead = 0;
    for (int a = 0; a < n; ++a)
      if (s[a] != 0) {
        lead = s[a];
        break;
      }
    negate = lead < 0;
  }
  for (int a = 0; a < n; ++a) canon[a] = negate ? -s[a] : s[a];
  Rng rng(mix_seed(seed, bin_key(canon, n)));
  cplx c = rng.unit_disc();
  bool zero_bin = true;
  for (int a = 0; a < n; ++a)
    if (s[a] != 0) zero_bin = false;
  if (hermitian && zero_bin) return cplx{c.real(), 0.0};
  return negate ? std::conj(c) : c;
}

}  // namespace

Field random_band_limited(const GridSpec& g, std::uint64_t seed, const CorpusSpec& spec) {
  Field spectrum(g, Domain::frequency);
  const double Ln = std::pow(g.L, g.n);
  int ix[max_dim];
  int sx[max_dim];
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    g.unflatten(i, ix);
    bool in_band = true;
    bool at_nyquist = false;
    double xi2 = 0.0;
    for (int a = 0; a < g.n; ++a) {
      sx[a] = g.signed_index(ix[a]);
      if (std::abs(sx[a]) > spec.band) in_band = false;
      if (sx[a] == -g.M / 2) at_nyquist = true;
      double f = g.freq1(ix[a]);
      xi2 += f * f;
    }
    if (at_nyquist) continue;
    double envelope = std::pow(1.0 + xi2, -spec.decay / 2.0);
    if (in_band) {
      spectrum.samples[i] = Ln * envelope * bin_coefficient(seed, sx, g.n, spec.hermitian);
    } else if (spec.tail_amplitude > 0.0) {
      spectrum.samples[i] = Ln * spec.tail_amplitude * envelope / (1.0 + xi2) *
                            bin_coefficient(seed ^ 0x5851f42d4c957f2dULL, sx, g.n, spec.hermitian);
    }
  }
  return idft(spectrum);
}

std::vector<Field> make_corpus(const GridSpec& g, std::uint64_t seed, int count,
                               const CorpusSpec& spec) {
  std::vector<Field> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(random_band_limited(g, mix_seed(seed, static_cast<std::uint64_t>(i)), spec));
  return out;
}

}  // namespace kh
