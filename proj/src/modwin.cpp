#include "khspace/modwin.hpp"

#include <cmath>
#include <stdexcept>

namespace kh {

ShortTimeTransform short_time_transform(const Field& u, const Window& chi) {
  if (!(u.grid == chi.field.grid)) throw std::invalid_argument("window grid mismatch");
  const GridSpec& g = u.grid;
  ShortTimeTransform V;
  V.base = g;
  V.values.resize(g.size() * g.size());

  int yx[max_dim];
  int ix[max_dim];
  int jx[max_dim];
  Field prod(g, Domain::space);
  for (std::size_t y = 0; y < g.size(); ++y) {
    g.unflatten(y, yx);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.unflatten(i, ix);
      for (int a = 0; a < g.n; ++a) jx[a] = g.wrap_index(ix[a] - yx[a]);
      prod.samples[i] = u.samples[i] * chi.field.samples[g.flatten(jx)];
    }
    Field spec = dft(prod);
    std::copy(spec.samples.begin(), spec.samples.end(), V.values.begin() + static_cast<std::ptrdiff_t>(y * g.size()));
  }
  return V;
}

namespace {

std::vector<double> profile_impl(const Field& u, const Window& chi, double p, double cell) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be in [1, inf]");
  ShortTimeTransform V = short_time_transform(u, chi);
  const std::size_t nbins = V.base.size();
  std::vector<double> U(nbins, 0.0);
  if (std::isinf(p)) {
    for (std::size_t y = 0; y < nbins; ++y)
      for (std::size_t x = 0; x < nbins; ++x) U[x] = std::max(U[x], std::abs(V.at(y, x)));
  } else {
    for (std::size_t y = 0; y < nbins; ++y)
      for (std::size_t x = 0; x < nbins; ++x) U[x] += std::pow(std::abs(V.at(y, x)), p);
    for (auto& v : U) v = std::pow(v * cell, 1.0 / p);
  }
  return U;
}

}  // namespace

std::vector<double> modulation_profile(const Field& u, const Window& chi, double p) {
  return profile_impl(u, chi, p, u.grid.cell_volume());
}

std::vector<double> modulation_profile_counting(const Field& u, const Window& chi, double p) {
  return profile_impl(u, chi, p, 1.0);
}

double modulation_norm(const Field& u, const Window& chi, double p) {
  auto U = modulation_profile(u, chi, p);
  double acc = 0.0;
  for (double v : U) acc += v;
  return acc * u.grid.freq_cell_volume();
}

BoundCheck embedding_check(const Field& u, const Window& chi, const Window& chit, const Weight& k,
                           double p) {
  const GridSpec& g = u.grid;
  if (!(chi.field.grid == g) || !(chit.field.grid == g)) throw std::invalid_argument("grid mismatch");

  // chit = 1 on supp chi, and 1/k must be grid-summable.
  double peak = sup_norm(chi.field);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(chi.field.samples[i]) > 1e-14 * peak && std::abs(chit.field.samples[i] - 1.0) > 1e-10)
      throw std::invalid_argument("embedding rejected: chit != 1 on supp chi");

  GrowthCertificate cert = k.certificate();
  auto kg = weight_on_grid(k, g);
  double invk_l1 = 0.0;
  for (double v : kg) invk_l1 += 1.0 / v;
  invk_l1 *= g.freq_cell_volume();

  BoundCheck chk;
  chk.actual = modulation_norm(u, chi, p);
  chk.bound = std::pow(two_pi, -g.n) * cert.C * sobolev_norm(chi.field, cert.N) * invk_l1 *
              amalgam_norm_value(u, chit, k, p, AmalgamMode::continuous);
  chk.pass = chk.actual <= chk.bound * (1.0 + 1e-6);
  return chk;
}

std::pair<Window, Window> embedding_window_pair(const GridSpec& g, const std::vector<double>& center,
                                                double radius) {
  Window chi = Window::bump(g, center, radius);
  double outer = std::min(2.0 * radius, 0.45 * g.L);
  Window chit = Window::plateau(g, center, radius * 1.05, outer);
  return {chi, chit};
}

}  // namespace kh
