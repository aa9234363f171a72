#include "khspace/window.hpp"

#include <cmath>
#include <stdexcept>

namespace kh {

double smoothstep_c0(double t) {
  auto f = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  double a = f(t);
  double b = f(1.0 - t);
  return a / (a + b);
}

Window Window::bump(const GridSpec& g, const std::vector<double>& center, double radius,
                    double amplitude) {
  if (static_cast<int>(center.size()) != g.n) throw std::invalid_argument("window center dimension mismatch");
  if (!(radius > 0.0) || radius >= g.L / 2.0) throw std::invalid_argument("window radius must be in (0, L/2)");
  Window w;
  w.center = center;
  w.support_radius = radius;
  w.field = Field(g, Domain::space);
  double x[max_dim];
  for (std::size_t i = 0; i < w.field.size(); ++i) {
    g.coords(i, x);
    double r2 = 0.0;
    for (int a = 0; a < g.n; ++a) {
      double d = g.torus_delta(x[a], center[a]) / radius;
      r2 += d * d;
    }
    w.field.samples[i] = r2 < 1.0 ? amplitude * std::exp(-1.0 / (1.0 - r2)) : 0.0;
  }
  w.verify();
  return w;
}

Window Window::plateau(const GridSpec& g, const std::vector<double>& center, double inner,
                       double outer) {
  if (static_cast<int>(center.size()) != g.n) throw std::invalid_argument("window center dimension mismatch");
  if (!(0.0 < inner && inner < outer && outer < g.L / 2.0))
    throw std::invalid_argument("plateau radii must satisfy 0 < inner < outer < L/2");
  Window w;
  w.center = center;
  w.support_radius = outer;
  w.field = Field(g, Domain::space);
  double x[max_dim];
  for (std::size_t i = 0; i < w.field.size(); ++i) {
    g.coords(i, x);
    double v = 1.0;
    for (int a = 0; a < g.n; ++a) {
      double d = std::abs(g.torus_delta(x[a], center[a]));
      v *= smoothstep_c0((outer - d) / (outer - inner));
    }
    w.field.samples[i] = v;
  }
  w.verify();
  return w;
}

void Window::verify() const {
  const GridSpec& g = field.grid;
  double x[max_dim];
  double peak = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    g.coords(i, x);
    double dist = 0.0;
    for (int a = 0; a < g.n; ++a) dist = std::max(dist, std::abs(g.torus_delta(x[a], center[a])));
    double m = std::abs(field.samples[i]);
    peak = std::max(peak, m);
    if (dist > support_radius && m > 1e-14)
      throw std::logic_error("window samples leak outside the declared support");
  }
  if (peak <= 0.0) throw std::invalid_argument("window is identically zero");
}

std::vector<std::vector<long long>> Lattice::sample_offsets(const GridSpec& g) const {
  if (static_cast<int>(spacing.size()) != g.n) throw std::invalid_argument("lattice dimension mismatch");
  std::vector<long long> step(spacing.size());
  std::vector<long long> count(spacing.size());
  for (int a = 0; a < g.n; ++a) {
    double cells = spacing[static_cast<std::size_t>(a)] / g.spacing();
    double r = std::round(cells);
    if (std::abs(cells - r) > 1e-9 || r < 1.0)
      throw std::invalid_argument("lattice spacing must be a positive multiple of the grid spacing");
    double cnt = g.M / r;
    if (std::abs(cnt - std::round(cnt)) > 1e-9)
      throw std::invalid_argument("lattice spacing must tile the period");
    step[static_cast<std::size_t>(a)] = static_cast<long long>(r);
    count[static_cast<std::size_t>(a)] = static_cast<long long>(std::round(cnt));
  }
  std::vector<std::vector<long long>> pts;
  std::vector<long long> idx(spacing.size(), 0);
  while (true) {
    std::vector<long long> off(spacing.size());
    for (int a = 0; a < g.n; ++a) off[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(a)] * step[static_cast<std::size_t>(a)];
    pts.push_back(off);
    int a = g.n - 1;
    while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == count[static_cast<std::size_t>(a)]) idx[static_cast<std::size_t>(a--)] = 0;
    if (a < 0) break;
  }
  return pts;
}

namespace {

// 1-periodic cell profile: supp in [1/4,3/4] mod 1, equals 1 on [1/3,2/3].
double cell_profile(double t) {
  t -= std::floor(t);
  if (t <= 0.25 || t >= 0.75) return 0.0;
  return smoothstep_c0((t - 0.25) * 12.0) * smoothstep_c0((0.75 - t) * 12.0);
}

// Plateau 1 on [-1/2,1/2], support (-3/4,3/4); its integer translates of the
// plateau region tile the line, so the periodized sum is >= 1.
double cover_profile(double t) {
  double d = std::abs(t);
  if (d >= 0.75) return 0.0;
  return smoothstep_c0((0.75 - d) * 4.0);
}

}  // namespace

Window unit_cover_window(const GridSpec& g, const std::vector<double>& center) {
  detail::require_integer_lattice(g);
  std::vector<double> c = center;
  if (c.empty()) c.assign(static_cast<std::size_t>(g.n), g.L / 2.0);
  if (static_cast<int>(c.size()) != g.n) throw std::invalid_argument("window center dimension mismatch");

  Window w;
  w.center = c;
  w.support_radius = 0.75;
  w.field = Field(g, Domain::space);
  double x[max_dim];
  for (std::size_t i = 0; i < w.field.size(); ++i) {
    g.coords(i, x);
    double v = 1.0;
    for (int a = 0; a < g.n; ++a) {
      double t = g.torus_delta(x[a], c[static_cast<std::size_t>(a)]);
      // periodized denominator, evaluated via the fractional part
      double tf = t - std::floor(t);
      double den = cover_profile(tf) + cover_profile(tf - 1.0);
      v *= cover_profile(t) / den;
    }
    w.field.samples[i] = v;
  }
  w.verify();
  return w;
}

PartitionOfUnity PartitionOfUnity::build(const GridSpec& g) {
  detail::require_integer_lattice(g);
  const int n = g.n;

  // Centers {0, 1/3, 2/3}^n: the 1/3-spaced translates of the [1/3,2/3]
  // plateau cover the cell, which keeps the periodized sum >= 1.
  int m = 1;
  for (int a = 0; a < n; ++a) m *= 3;

  PartitionOfUnity P;
  P.aggregate = Field(g, Domain::space);

  // Periodized denominator H(x) = prod_a sum_c profile(x_a - c), c in {0,1/3,2/3}.
  Field H(g, Domain::space);
  double x[max_dim];
  for (std::size_t i = 0; i < H.size(); ++i) {
    g.coords(i, x);
    double v = 1.0;
    for (int a = 0; a < n; ++a) {
      double s = cell_profile(x[a]) + cell_profile(x[a] - 1.0 / 3.0) + cell_profile(x[a] - 2.0 / 3.0);
      v *= s;
    }
    if (!(v > 0.0)) throw std::logic_error("partition denominator vanished");
    H.samples[i] = v;
  }

  for (int piece = 0; piece < m; ++piece) {
    std::vector<double> c(static_cast<std::size_t>(n));
    int q = piece;
    for (int a = n - 1; a >= 0; --a) {
      c[static_cast<std::size_t>(a)] = (q % 3) / 3.0;
      q /= 3;
    }
    // The piece is a single bump supported in the cube x_i + [1/4,3/4]^n
    // (cube middle x_i + 1/2); only chi_i below is periodized.
    std::vector<double> cube_mid(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      cube_mid[static_cast<std::size_t>(a)] = std::fmod(c[static_cast<std::size_t>(a)] + 0.5, g.L);
    Field hi(g, Domain::space);
    for (std::size_t i = 0; i < hi.size(); ++i) {
      g.coords(i, x);
      double v = 1.0;
      for (int a = 0; a < n; ++a) {
        double t = g.torus_delta(x[a], cube_mid[static_cast<std::size_t>(a)]) + 0.5;
        v *= (t > 0.25 && t < 0.75) ? cell_profile(t) : 0.0;
      }
      hi.samples[i] = v / H.samples[i].real();
    }
    Window w;
    w.field = hi;
    w.center = cube_mid;
    w.support_radius = 0.25;
    w.verify();
    P.pieces.push_back(w);
    P.centers.push_back(c);
    P.aggregate = P.aggregate + hi;

    // chi_i = sum over integer translates.
    Field chi(g, Domain::space);
    const int cells = detail::unit_shift_samples(g);
    const int L = static_cast<int>(std::round(g.L));
    int gamma[max_dim] = {0, 0, 0, 0};
    int ix[max_dim];
    int jx[max_dim];
    while (true) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, ix);
        for (int a = 0; a < n; ++a) jx[a] = g.wrap_index(ix[a] - static_cast<long long>(gamma[a]) * cells);
        chi.samples[i] += hi.samples[g.flatten(jx)];
      }
      int a = n - 1;
      while (a >= 0 && ++gamma[a] == L) gamma[a--] = 0;
      if (a < 0) break;
    }
    P.chi.push_back(chi);
  }

  // Invariants: sum_i chi_i = 1 and sum_gamma tau_gamma h = 1.
  Field total(g, Domain::space);
  for (const auto& chi : P.chi) total = total + chi;
  for (std::size_t i = 0; i < total.size(); ++i)
    if (std::abs(total.samples[i] - 1.0) > 1e-10) throw std::logic_error("partition of unity does not sum to 1");

  return P;
}

}  // namespace kh
