#pragma once

#include <cmath>

#include "khspace/corpus.hpp"
#include "khspace/field.hpp"

namespace kh::testing {

/// Direct O(M^2) quadrature of the transform; the oracle the FFT path is
/// checked against.
inline Field naive_dft(const Field& u) {
  const GridSpec& g = u.grid;
  Field out(g, Domain::frequency);
  double x[max_dim];
  double xi[max_dim];
  for (std::size_t j = 0; j < g.size(); ++j) {
    g.freqs(j, xi);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.coords(i, x);
      double phase = 0.0;
      for (int a = 0; a < g.n; ++a) phase -= x[a] * xi[a];
      acc += u.samples[i] * cplx{std::cos(phase), std::sin(phase)};
    }
    out.samples[j] = acc * g.cell_volume();
  }
  return out;
}

inline Field constant_field(const GridSpec& g, cplx c) {
  Field u(g, Domain::space);
  for (auto& z : u.samples) z = c;
  return u;
}

/// e^{i<x, xi_bin>} for an on-grid signed bin index.
inline Field character(const GridSpec& g, const std::vector<int>& bin) {
  return Field::sample(g, [&](const double* x) {
    double phase = 0.0;
    for (int a = 0; a < g.n; ++a) phase += x[a] * g.freq_step() * bin[static_cast<std::size_t>(a)];
    return cplx{std::cos(phase), std::sin(phase)};
  });
}

inline Field periodized_gaussian(const GridSpec& g, double center, double sigma) {
  return Field::sample(g, [&](const double* x) {
    double acc = 0.0;
    for (int m = -2; m <= 2; ++m) {
      double d = x[0] - center + m * g.L;
      acc += std::exp(-d * d / (2.0 * sigma * sigma));
    }
    return cplx{acc, 0.0};
  });
}

inline double max_abs_diff(const Field& a, const Field& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.samples[i] - b.samples[i]));
  return worst;
}

}  // namespace kh::testing
